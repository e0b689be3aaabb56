"""Compilers for the loop, a single glue/cut edge, and the Gray-ordered line."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, concat, adjoint, g_cnot, g_rot, neg, pos, Control
from .elemgates import diagonal_to_circuit
from .hamlib import LineSpec, LoopSpec, circulant_eigs
from . import suzuki


def qft_circuit(nb: int, num_qubits: int | None = None) -> Circuit:
    """DFT with omega = exp(-2 pi i / 2^nb); column m is (omega^{jm})_j / sqrt(n).

    Hadamards, singly controlled phases, then the bit reversal as CNOT
    triples.
    """
    if nb < 1:
        raise ValueError("nb must be at least 1")
    n = num_qubits or nb
    gates = []
    for i in range(nb - 1, -1, -1):
        gates.append(Gate("HAD", i))
        for j in range(i - 1, -1, -1):
            gates.append(Gate("PHASE", i, pos(j), -np.pi / 2 ** (i - j)))
    for a in range(nb // 2):
        b = nb - 1 - a
        gates += [g_cnot(a, b), g_cnot(b, a), g_cnot(a, b)]
    return Circuit(n, tuple(gates))


def compile_loop(spec: LoopSpec, ancilla: int | None = None) -> Circuit:
    """exp(i h_loop) = U exp(iD) U^dag with U the DFT; exact.

    The ancilla defaults to the qubit just above the register.
    """
    nb = spec.nb
    anc = nb if ancilla is None else ancilla
    n = max(nb, anc) + 1
    u = qft_circuit(nb, n)
    diag = diagonal_to_circuit(circulant_eigs(spec), list(range(nb)), anc, n)
    return concat(adjoint(u), diag, u, num_qubits=n)


@dataclass(frozen=True)
class EdgeSpec:
    j: int
    k: int
    g: float
    sign: str  # "cut" (-g) or "glue" (+g)
    nb: int

    def __post_init__(self):
        if self.j == self.k:
            raise ValueError("an edge needs j != k")
        if self.sign not in ("cut", "glue"):
            raise ValueError("sign must be 'cut' or 'glue'")
        if not (0 <= self.j < 2 ** self.nb and 0 <= self.k < 2 ** self.nb):
            raise ValueError("node outside the register")

    @property
    def coupling(self) -> float:
        return -self.g if self.sign == "cut" else self.g


def compile_edge(spec: EdgeSpec, num_qubits: int | None = None) -> Circuit:
    """exp(+-i g (|j><k| + h.c.)), exact.

    beta0 is the lowest bit with j=1, k=0 (j and k swap roles if none).  The
    other differing bits are flipped under n(beta0), which maps the pair
    onto a single controlled x rotation on beta0.
    """
    n = num_qubits or spec.nb
    j, k = spec.j, spec.k
    diff = j ^ k
    cand = [b for b in range(spec.nb) if (diff >> b) & 1 and (j >> b) & 1]
    if not cand:
        j, k = k, j
        cand = [b for b in range(spec.nb) if (diff >> b) & 1 and (j >> b) & 1]
    b0 = cand[0]
    flips = [b for b in range(spec.nb - 1, -1, -1) if (diff >> b) & 1 and b != b0]
    u = Circuit(n, tuple(g_cnot(b0, b) for b in flips))
    cs = tuple(Control(b, bool((k >> b) & 1)) for b in range(spec.nb - 1, -1, -1) if b != b0)
    core = Circuit(n, (g_rot("X", spec.coupling, b0, cs),))
    return concat(u, core, adjoint(u), num_qubits=n)


def line_terms(nb: int) -> list[tuple[int, tuple[Control, ...]]]:
    """(target, controls) of A = g sx(0) and B_beta = g sx(beta) n(beta-1) nbar(beta-2..0)."""
    out = [(0, ())]
    for beta in range(1, nb):
        out.append((beta, pos(beta - 1) + neg(*range(beta - 2, -1, -1))))
    return out


def compile_line(spec: LineSpec, order: str = "lie1", b_order=None) -> Circuit:
    """Product formula for exp(i h_line) with A = g sx(0) and B = sum of B_beta.

    The B_beta commute, so exp(isB) is exact as a product of controlled
    rotations in any order (``b_order`` permutes them).
    """
    nb = spec.nb
    terms = line_terms(nb)
    bt = terms[1:]
    if b_order is not None:
        bt = [bt[i] for i in b_order]

    def exp_a(s):
        return Circuit(nb, (g_rot("X", spec.g * s, 0),))

    def exp_b(s):
        return Circuit(nb, tuple(g_rot("X", spec.g * s, t, cs) for t, cs in bt))

    return suzuki.compose(order, 1.0, exp_a, exp_b)
