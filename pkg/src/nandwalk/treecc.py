"""Balanced binary tree compiler.

exp(iA) = calF exp(i calA) calF^dag, where calF diagonalizes the levels and
calA splits into independent strands.  Each strand's evolution is
approximated by CSD-ready factors Gamma_lam (error O(g^3), or O(g^4) in the
equal-coupling variant).  Each Gamma_lam is a multiply controlled x rotation
conjugated by a short chain of controlled x rotations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .circuit import Circuit, Control, Gate, adjoint, concat, g_rot, neg, pos
from .hamlib import TreeSpec

HSX_ANGLE = np.pi / 4  # H sigma_x = exp(i pi/4 sigma_y)


def minlam(s: int) -> int:
    if s < 0:
        raise ValueError("strand ids are non-negative")
    return math.ceil(math.log2(s + 1)) + 1 if s > 0 else 1


def strand_node(s: int, lam: int) -> int:
    return 2 ** lam - s - 1


def strand_nodes(s: int, top: int) -> list[int]:
    return [strand_node(s, l) for l in range(minlam(s), top + 1)]


def active(s: int, Lam: int) -> bool:
    return 0 <= s < 2 ** (Lam - 1)


# ---------------------------------------------------------------- level diagonalization

def cal_a(spec: TreeSpec) -> np.ndarray:
    """calA_{2^{Lam+1}}: calB_{2^lam} = diag(0, d_lam I)."""
    a = np.zeros((2, 2))
    for lam in range(1, spec.Lam + 1):
        m = 2 ** lam
        b = np.zeros((m, m))
        b[m // 2:, m // 2:] = spec.d_of(lam) * np.eye(m // 2)
        a = np.block([[a, b.T], [b, np.zeros_like(b)]])
    return a.astype(complex)


def controlled_f_circuit(lam: int, Lam: int) -> Circuit:
    """F_{2^lam}(lam-1..0)^{n(lam)} for equal child couplings.

    F = (H sigma_x)(0) E4(0,1) E4(1,2) ... E4(lam-2, lam-1); each controlled
    swap is written as three Toffolis.
    """
    c = pos(lam)
    gates = []
    for a in range(lam - 2, -1, -1):
        b = a + 1
        gates += [
            Gate("SIGX", b, c + pos(a)),
            Gate("SIGX", a, c + pos(b)),
            Gate("SIGX", b, c + pos(a)),
        ]
    gates.append(g_rot("Y", HSX_ANGLE, 0, c))
    return Circuit(Lam + 1, tuple(gates))


def calF_circuit(Lam: int, spec: TreeSpec | None = None) -> Circuit:
    """calF = F_{2^Lam}^{n(Lam)} ... F_2^{n(1)}; F_2 part is applied first.

    Every supported TreeSpec has equal couplings to both children, so each
    U_b is H sigma_x and the multiplexed form collapses to one gate.
    """
    return concat(*(controlled_f_circuit(l, Lam) for l in range(1, Lam + 1)), num_qubits=Lam + 1)


# ---------------------------------------------------------------- strands

@dataclass(frozen=True)
class StrandMatrices:
    s: int
    nodes: tuple[int, ...]
    calA: np.ndarray  # path matrix on ``nodes``
    calB: float  # weight of |top><top| in calB^{(s)}_{2^Lam}


def strand_path(s: int, lam: int, spec: TreeSpec) -> np.ndarray:
    """calA^{(s)}_{2^lam} restricted to the strand nodes of levels minlam..lam."""
    m0 = minlam(s)
    size = max(lam - m0 + 1, 0)
    p = np.zeros((size, size))
    for i, l in enumerate(range(m0, lam)):
        p[i, i + 1] = p[i + 1, i] = spec.d_of(l)
    return p


def strand_matrices(s: int, Lam: int, spec: TreeSpec) -> StrandMatrices:
    if not active(s, Lam):
        raise ValueError(f"strand {s} is not active for Lam = {Lam}")
    return StrandMatrices(s, tuple(strand_nodes(s, Lam)), strand_path(s, Lam, spec), spec.d_of(Lam))


def strand_embed(s: int, Lam: int, spec: TreeSpec) -> np.ndarray:
    """calA^{(s)}_{2^{Lam+1}} as a full matrix."""
    n = 2 ** (Lam + 1)
    out = np.zeros((n, n), dtype=complex)
    nodes = strand_nodes(s, Lam + 1)
    for i, l in enumerate(range(minlam(s), Lam + 1)):
        out[nodes[i], nodes[i + 1]] = out[nodes[i + 1], nodes[i]] = spec.d_of(l)
    return out


@dataclass(frozen=True)
class BbarRow:
    """Row |2^lam - s - 1> of calB sinc(calA/2) exp(i calA/2) for strand s.

    ``levels[i]`` is the strand level lam' of node ``nodes[i]``;
    ``coeffs`` are the complex entries, which equal i^{(lam - lam') odd} b
    with b real.
    """
    s: int
    lam: int
    levels: tuple[int, ...]
    nodes: tuple[int, ...]
    coeffs: np.ndarray

    @property
    def is_zero(self) -> bool:
        return len(self.levels) == 0

    def prefix(self, i: int) -> complex:
        return 1j if (self.lam - self.levels[i]) % 2 else 1.0

    @property
    def b(self) -> np.ndarray:
        """The real b coefficients (prefix removed)."""
        return np.array([(c / self.prefix(i)).real for i, c in enumerate(self.coeffs)])

    def parity_leak(self) -> float:
        if self.is_zero:
            return 0.0
        return max(abs((c / self.prefix(i)).imag) for i, c in enumerate(self.coeffs))

    def vector(self, dim: int) -> np.ndarray:
        v = np.zeros(dim, dtype=complex)
        for n_, c in zip(self.nodes, self.coeffs):
            v[n_] = c
        return v


def bbar_row(s: int, lam: int, spec: TreeSpec, scale: float = 1.0) -> BbarRow:
    m0 = minlam(s)
    if lam < m0:
        return BbarRow(s, lam, (), (), np.zeros(0, dtype=complex))
    p = strand_path(s, lam, spec)
    f = matcore.sinc_exp_half(p) if len(p) > 1 else np.eye(1, dtype=complex)
    row = scale * spec.d_of(lam) * f[-1, :]
    levels = tuple(range(m0, lam + 1))
    return BbarRow(s, lam, levels, tuple(strand_node(s, l) for l in levels), row)


# ---------------------------------------------------------------- one-sided SVD

@dataclass(frozen=True)
class RotationChain:
    """row = rho_final <top| R_top ... R_bottom with R_q = exp(i theta nbar(..) sx(q)).

    ``thetas`` lists (target qubit, angle) from the bottom of the strand
    upward, which is also the order in which the gates act.
    """
    rho_final: float
    thetas: tuple[tuple[int, float], ...]
    s: int = 0
    lam: int = 0


def _fold(row: BbarRow) -> RotationChain:
    c = row.coeffs
    acc = c[0]
    thetas = []
    for i in range(1, len(c)):
        q = row.levels[i - 1]  # x rotation on qubit q mixes nodes at levels q and q+1
        ph = row.prefix(i)
        hi = c[i]
        rho = math.hypot(abs(hi), abs(acc))
        if rho == 0.0:
            thetas.append((q, 0.0))
            acc = 0.0 * ph
            continue
        cos_t = (hi / ph).real / rho
        sin_t = (acc / (1j * ph)).real / rho
        thetas.append((q, math.atan2(sin_t, cos_t)))
        acc = ph * rho
    return RotationChain(float(np.real(acc)), tuple(thetas), row.s, row.lam)


def svd_chain(row: BbarRow) -> RotationChain:
    if row.is_zero or not np.any(np.abs(row.coeffs) > 0):
        raise ValueError("cannot factor a zero row")
    return _fold(row)


# ---------------------------------------------------------------- Gamma circuits

def _chain_gates(chain: RotationChain, lam: int, extra: tuple[Control, ...]) -> list[Gate]:
    return [g_rot("X", th, q, extra + neg(*range(lam - 1, q, -1))) for q, th in chain.thetas]


def chain_circuit(chain: RotationChain, lam: int, Lam: int) -> Circuit:
    """The rotation chain W^{nbar(lam)}; row = rho <comp_lam(s)| W on strand s."""
    return Circuit(Lam + 1, tuple(_chain_gates(chain, lam, neg(lam))))


def _core_controls(Lam: int, lam: int, low: tuple[Control, ...]) -> tuple[Control, ...]:
    return neg(*range(Lam, lam, -1)) + low


def _pattern(value: int, lam: int, stop: int = 0) -> tuple[Control, ...]:
    """Controls matching bits lam-1..stop of value."""
    return tuple(Control(b, bool((value >> b) & 1)) for b in range(lam - 1, stop - 1, -1))


def gamma_from_chain(chain: RotationChain, lam: int, Lam: int, low: tuple[Control, ...],
                     angle_scale: float = 1.0) -> Circuit:
    """W^{nbar(lam)}, then the core rotation, then its inverse chain."""
    dc = chain_circuit(chain, lam, Lam)
    core = g_rot("X", angle_scale * chain.rho_final, lam, _core_controls(Lam, lam, low))
    return concat(dc, Circuit(Lam + 1, (core,)), adjoint(dc), num_qubits=Lam + 1)


def gamma_circuit(s: int, lam: int, Lam: int, chain: RotationChain | None = None,
                  spec: TreeSpec | None = None, angle_scale: float = 1.0) -> Circuit:
    """Gamma^{(s)}_lam on Lam+1 qubits; empty when lam < minlam(s)."""
    if not active(s, Lam) or not 1 <= lam <= Lam:
        raise ValueError(f"(s={s}, lam={lam}) is not a factor of a depth-{Lam} tree")
    if lam < minlam(s):
        return Circuit(Lam + 1)
    if chain is None:
        chain = _fold(bbar_row(s, lam, spec))
    low = _pattern(strand_node(s, lam), lam)
    return gamma_from_chain(chain, lam, Lam, low, angle_scale)


def gamma_generator(s: int, lam: int, Lam: int, spec: TreeSpec, scale: float = 1.0) -> np.ndarray:
    """Hermitian generator of Gamma^{(s)}_lam on the full 2^{Lam+1} register."""
    n = 2 ** (Lam + 1)
    h = np.zeros((n, n), dtype=complex)
    row = bbar_row(s, lam, spec, scale)
    if row.is_zero:
        return h
    up = strand_node(s, lam) + 2 ** lam
    for node, c in zip(row.nodes, row.coeffs):
        h[up, node] = c
        h[node, up] = np.conj(c)
    return h


def _scale_for(spec: TreeSpec, lam: int, Lam: int, variant: str) -> float:
    if variant == "order4" and lam < Lam:
        return 1.0 + spec.g ** 2 / 6.0
    return 1.0


def strand_circuit(s: int, Lam: int, spec: TreeSpec, variant: str = "order3") -> Circuit:
    """Gamma^{(s)}_1 ... Gamma^{(s)}_Lam as an operator product (Gamma_Lam acts first)."""
    parts = [gamma_circuit(s, lam, Lam, spec=spec, angle_scale=_scale_for(spec, lam, Lam, variant))
             for lam in range(Lam, 0, -1)]
    return concat(*parts, num_qubits=Lam + 1)


def class_strands(sigma: int) -> range:
    return range(2 ** sigma, 2 ** (sigma + 1))


def weave_class(sigma: int, Lam: int, spec: TreeSpec, variant: str = "order3") -> Circuit:
    """Product of Gamma^{(s)} over s in [2^sigma, 2^{sigma+1}) with merged controls.

    All strands of a class share minlam and therefore the same rotation
    chains; their core projectors differ only on qubits below sigma, which
    sum to the identity and are dropped.
    """
    if not 0 <= sigma <= Lam - 2:
        raise ValueError(f"class {sigma} is empty for Lam = {Lam}")
    rep = 2 ** sigma
    parts = []
    for lam in range(Lam, minlam(rep) - 1, -1):
        chain = _fold(bbar_row(rep, lam, spec))
        low = _pattern(strand_node(rep, lam), lam, stop=sigma)
        parts.append(gamma_from_chain(chain, lam, Lam, low, _scale_for(spec, lam, Lam, variant)))
    return concat(*parts, num_qubits=Lam + 1)


def exp_cal_a_circuit(spec: TreeSpec, variant: str = "order3") -> Circuit:
    """Approximate exp(i calA): woven classes sigma = Lam-2 .. 0, then strand 0."""
    Lam = spec.Lam
    parts = [weave_class(sig, Lam, spec, variant) for sig in range(Lam - 2, -1, -1)]
    parts.append(strand_circuit(0, Lam, spec, variant))
    return concat(*parts, num_qubits=Lam + 1)


VARIANTS = ("order3", "order4")


def compile_tree(spec: TreeSpec, variant: str = "order3") -> Circuit:
    """calF . exp(i calA) . calF^dag on Lam+1 qubits (calF^dag acts first)."""
    if variant in ("order4_appB", "order4"):
        variant = "order4"
        if not spec.uniform:
            raise ValueError("the order4 variant needs uniform couplings")
    elif variant != "order3":
        raise ValueError(f"unknown tree variant {variant!r}")
    f = calF_circuit(spec.Lam, spec)
    return concat(adjoint(f), exp_cal_a_circuit(spec, variant), f, num_qubits=spec.Lam + 1)


# ---------------------------------------------------------------- counts

def gamma_vertices(s: int, lam: int, Lam: int) -> int:
    m = minlam(s)
    if lam < m:
        return 0
    return Lam + 2 * sum(j + 1 for j in range(lam - m))


def calF_vertices(Lam: int) -> int:
    return sum(6 * l - 5 for l in range(1, Lam + 1))


def exp_cal_a_vertices(Lam: int) -> int:
    total = sum(gamma_vertices(0, l, Lam) for l in range(1, Lam + 1))
    for sigma in range(Lam - 1):
        rep = 2 ** sigma
        total += sum(gamma_vertices(rep, l, Lam) - sigma for l in range(minlam(rep), Lam + 1))
    return total


def tree_vertex_count(Lam: int) -> int:
    if Lam < 1:
        raise ValueError("Lam must be at least 1")
    return 2 * calF_vertices(Lam) + exp_cal_a_vertices(Lam)
