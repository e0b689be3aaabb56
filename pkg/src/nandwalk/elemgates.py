"""Expansion of controlled U(2) gates into CNOTs and one-qubit gates.

Also holds the uniformly controlled R_y (multiplexor) and the diagonal
unitary built from it with one ancilla.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .circuit import (
    I2, SX, SY, SZ, Circuit, Control, Gate, concat, g_cnot, g_rot, neg, pos, u2,
)

SQRT_X = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])


def _distinct(*qs):
    flat = []
    for q in qs:
        flat.extend(q if isinstance(q, (list, tuple)) else [q])
    if len(set(flat)) != len(flat):
        raise ValueError(f"qubits must be distinct: {flat}")
    return flat


def _width(*qs) -> int:
    return max(_distinct(*qs)) + 1


# ---------------------------------------------------------------- quaternion trick

def su2_factor(u):
    """Split U = e^{i phi} exp(i theta n.sigma) with theta in [0, pi]."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - I2)) > 1e-10:
        raise ValueError("U is not a 2x2 unitary")
    phi = np.angle(np.linalg.det(u)) / 2
    v = u * np.exp(-1j * phi)
    a, b = v[0, 0], v[0, 1]
    vec = np.array([b.imag, b.real, a.imag])  # sin(theta) * n
    s = np.linalg.norm(vec)
    theta = np.arctan2(s, a.real)
    n = vec / s if s > 1e-15 else np.array([0.0, 0.0, 1.0])
    return phi, theta, n


def _rotation_to(vec):
    """R in SU(2) with R sigma_x R^dag = vec . sigma."""
    x = np.array([1.0, 0.0, 0.0])
    c = float(np.clip(vec @ x, -1, 1))
    axis = np.cross(x, vec)
    s = np.linalg.norm(axis)
    if s < 1e-12:
        if c > 0:
            return I2.copy()
        axis, gamma = np.array([0.0, 0.0, 1.0]), np.pi
    else:
        axis, gamma = axis / s, np.arctan2(s, c)
    ms = axis[0] * SX + axis[1] * SY + axis[2] * SZ
    return np.cos(gamma / 2) * I2 - 1j * np.sin(gamma / 2) * ms


def quaternion_vectors(theta, n):
    """Unit vectors a, b with a.b = cos(theta) and a x b = n sin(theta)."""
    if abs(np.sin(theta)) < 1e-9 and np.cos(theta) > 0:
        x = np.array([1.0, 0.0, 0.0])
        return x, x
    ref = np.array([0.0, 0.0, 1.0]) if abs(n[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    b = np.cross(n, ref)
    b /= np.linalg.norm(b)
    a = np.cos(theta) * b + np.sin(theta) * np.cross(b, n)
    return a, b


def expand_controlled_u(u, target: int, control: int, num_qubits: int | None = None) -> Circuit:
    """U(target)^{n(control)} with exactly two CNOTs.

    Application order: S^dag, CNOT, R^dag S, CNOT, R on the target, then the
    phase e^{i phi n(control)} as a one-qubit phase gate on the control.
    """
    n = num_qubits or _width(target, control)
    phi, theta, nv = su2_factor(u)
    a, b = quaternion_vectors(theta, nv)
    r, s = _rotation_to(a), _rotation_to(b)
    gates = [
        u2(s.conj().T, target),
        g_cnot(control, target),
        u2(r.conj().T @ s, target),
        g_cnot(control, target),
        u2(r, target),
    ]
    if abs(phi) > 0:
        gates.append(Gate("PHASE", control, (), float(phi)))
    return Circuit(n, tuple(gates))


# ---------------------------------------------------------------- Toffoli and MCNOT

def expand_controlled_v_toffoli(v, target, c0, c1, num_qubits=None) -> Circuit:
    """V(target)^{n(c0) n(c1)} from controlled square roots of V."""
    n = num_qubits or _width(target, c0, c1)
    w, vec = np.linalg.eig(np.asarray(v, dtype=complex))
    root = vec @ np.diag(np.sqrt(w)) @ np.linalg.inv(vec)
    return concat(
        expand_controlled_u(root, target, c0, n),
        Circuit(n, (g_cnot(c0, c1),)),
        expand_controlled_u(root.conj().T, target, c1, n),
        Circuit(n, (g_cnot(c0, c1),)),
        expand_controlled_u(root, target, c1, n),
    )


def expand_toffoli(target: int, control1: int, control2: int, num_qubits: int | None = None) -> Circuit:
    n = num_qubits or _width(target, control1, control2)
    return expand_controlled_v_toffoli(SX, target, control1, control2, n)


def _toffoli_gate(t, c0, c1) -> Gate:
    return Gate("SIGX", t, pos(c0, c1))


def mcnot_ladder(target: int, controls: Sequence[int], ancillas: Sequence[int]) -> list[Gate]:
    """The 2(N_K - 2) + 1 Toffolis of the ancilla chain, unexpanded."""
    k = len(controls)
    if k < 3:
        raise ValueError("the ladder needs at least 3 controls")
    if len(ancillas) < k - 2:
        raise ValueError(f"{k} controls need {k - 2} ancillas, got {len(ancillas)}")
    anc = list(ancillas[: k - 2])
    up = [_toffoli_gate(anc[0], controls[0], controls[1])]
    for i in range(1, k - 2):
        up.append(_toffoli_gate(anc[i], anc[i - 1], controls[i + 1]))
    top = _toffoli_gate(target, anc[-1], controls[-1])
    return up + [top] + up[::-1]


def _expand_toffolis(gates, n) -> Circuit:
    parts = []
    for g in gates:
        c0, c1 = (c.qubit for c in g.controls)
        parts.append(expand_toffoli(g.target, c0, c1, n))
    return concat(*parts, num_qubits=n)


def expand_mcnot(target: int, controls: Sequence[int], ancillas: Sequence[int],
                 num_qubits: int | None = None) -> Circuit:
    n = num_qubits or _width(target, list(controls), list(ancillas[: max(len(controls) - 2, 0)]))
    _distinct(target, list(controls), list(ancillas))
    return _expand_toffolis(mcnot_ladder(target, controls, ancillas), n)


def expand_multiply_controlled_u(u, target: int, controls: Sequence[int], ancilla,
                                 num_qubits: int | None = None) -> Circuit:
    """U(target) controlled on n() of every control, via one extra ancilla.

    ``ancilla`` is either one qubit or a list; the first entry receives the
    AND of the controls and the rest feed the Toffoli ladder.  The ladder's
    uncompute and recompute halves sit on either side of the controlled U and
    touch disjoint qubits from it, so they cancel and are emitted once.
    """
    anc = [ancilla] if np.isscalar(ancilla) else list(ancilla)
    controls = list(controls)
    k = len(controls)
    if k == 0:
        raise ValueError("need at least one control")
    if k == 1:
        n = num_qubits or _width(target, controls)
        return expand_controlled_u(u, target, controls[0], n)
    need = 1 + max(k - 2, 0)
    if len(anc) < need:
        raise ValueError(f"{k} controls need {need} ancillas, got {len(anc)}")
    anc = anc[:need]
    n = num_qubits or _width(target, controls, anc)
    a0, ladder = anc[0], anc[1:]
    if k == 2:
        compute = [_toffoli_gate(a0, controls[0], controls[1])]
        up = []
    else:
        full = mcnot_ladder(a0, controls, ladder)
        up = full[: k - 2]
        compute = up + [full[k - 2]]
    return concat(
        _expand_toffolis(compute, n),
        expand_controlled_u(u, target, a0, n),
        _expand_toffolis([compute[-1]] + up[::-1], n),
        num_qubits=n,
    )


def mcu_cnot_count(k: int) -> int:
    """CNOTs emitted by expand_multiply_controlled_u for k controls."""
    if k == 1:
        return 2
    if k == 2:
        return 18
    return 16 * k - 14


# ---------------------------------------------------------------- general expansion

def _flip_negatives(g: Gate):
    flips = [Gate("SIGX", c.qubit) for c in g.controls if not c.positive]
    return flips, Gate(g.kind, g.target, tuple(Control(c.qubit, True) for c in g.controls),
                       g.angle, g.target2, g.matrix)


def expand_gate(g: Gate, ancillas: Sequence[int], n: int) -> Circuit:
    """Rewrite one IR gate with CNOTs and uncontrolled one-qubit gates."""
    if not g.controls:
        if g.kind == "SWAP":
            a, b = g.target, g.target2
            return Circuit(n, (g_cnot(a, b), g_cnot(b, a), g_cnot(a, b)))
        return Circuit(n, (g,))
    flips, gp = _flip_negatives(g)
    cs = [c.qubit for c in gp.controls]
    if gp.kind == "SWAP":
        a, b = gp.target, gp.target2
        body = concat(*(expand_gate(Gate("SIGX", t, gp.controls + pos(c)), ancillas, n)
                        for t, c in ((b, a), (a, b), (b, a))), num_qubits=n)
    elif gp.kind == "PHASE" and gp.target is None:
        # e^{it n(c_last)} controlled on the rest
        last, rest = cs[-1], gp.controls[:-1]
        body = expand_gate(Gate("PHASE", last, rest, gp.angle), ancillas, n)
    elif gp.kind == "SIGX" and len(cs) == 1:
        body = Circuit(n, (gp,))
    elif gp.kind == "SIGX" and len(cs) == 2:
        body = expand_toffoli(gp.target, cs[0], cs[1], n)
    elif gp.kind == "SIGX":
        body = expand_mcnot(gp.target, cs, ancillas, n)
    else:
        m = gp.op()
        body = expand_multiply_controlled_u(m, gp.target, cs, list(ancillas), n)
    fl = Circuit(n, tuple(flips))
    return concat(fl, body, fl, num_qubits=n)


def expand_circuit(c: Circuit, ancillas: Sequence[int] = ()) -> Circuit:
    """Expand every controlled gate; ancillas must start (and end) in |0>."""
    n = c.num_qubits
    return concat(*(expand_gate(g, ancillas, n) for g in c.gates), num_qubits=n)


# ---------------------------------------------------------------- multiplexor and diagonal

def gray(j: int) -> int:
    return j ^ (j >> 1)


def walsh_angles(phis: Sequence[float]) -> np.ndarray:
    """alpha_j = 2^-k sum_b (-1)^{b . gray(j)} phi_b."""
    phis = np.asarray(phis, dtype=float)
    m = len(phis)
    out = np.empty(m)
    for j in range(m):
        gj = gray(j)
        signs = np.array([(-1) ** bin(b & gj).count("1") for b in range(m)])
        out[j] = signs @ phis / m
    return out


def multiplexor_to_cnots(angles: Sequence[float], target: int, controls: Sequence[int],
                         num_qubits: int | None = None) -> Circuit:
    """exp(i sigma_y(target) sum_b phi_b P_b(controls)).

    Bit i of the index b is the value of ``controls[i]``.
    """
    k = len(controls)
    if k < 1:
        raise ValueError("need at least one control")
    if len(angles) != 2 ** k:
        raise ValueError(f"{k} controls need {2 ** k} angles, got {len(angles)}")
    n = num_qubits or _width(target, list(controls))
    alpha = walsh_angles(angles)
    m = 2 ** k
    gates = []
    for j in range(m):
        gates.append(g_rot("Y", alpha[j], target))
        bit = (gray(j) ^ gray((j + 1) % m)).bit_length() - 1
        gates.append(g_cnot(controls[bit], target))
    return Circuit(n, tuple(gates))


def diagonal_to_circuit(phases: Sequence[float], qubits: Sequence[int], ancilla: int,
                        num_qubits: int | None = None) -> Circuit:
    """diag(e^{i theta_b}) on ``qubits`` (bit i of b on qubits[i]) using an ancilla in |0>."""
    n = num_qubits or _width(list(qubits), ancilla)
    mux = multiplexor_to_cnots(phases, ancilla, qubits, n)
    return concat(
        Circuit(n, (g_rot("X", np.pi / 4, ancilla),)),
        mux,
        Circuit(n, (g_rot("X", -np.pi / 4, ancilla),)),
        num_qubits=n,
    )
