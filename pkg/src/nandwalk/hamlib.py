"""Explicit Hamiltonians for the loop, line, edges, tree, oracle and full walk.

Node k of any register is the basis state |bin(k)>.  Tree nodes use heap
numbering: the children of node j are 2j and 2j+1, node 1 is the root and
node 0 is a disconnected padding node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circuit import SX


@dataclass(frozen=True)
class LoopSpec:
    nb: int
    g: float

    def __post_init__(self):
        if self.nb < 2:
            raise ValueError("loop needs nb >= 2")


@dataclass(frozen=True)
class LineSpec:
    nb: int
    g: float

    def __post_init__(self):
        if self.nb < 2:
            raise ValueError("line needs nb >= 2")


@dataclass(frozen=True)
class TreeSpec:
    """Balanced binary tree of depth Lam.

    Either ``g`` (every edge has coupling g, so d_lam = sqrt(2) g) or an
    explicit list ``d`` of length Lam.  With explicit d, both edges from a
    depth lam-1 parent to its children carry d_lam / sqrt(2).
    """
    Lam: int
    g: float | None = None
    d: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.Lam < 1:
            raise ValueError("Lam must be at least 1")
        if (self.g is None) == (self.d is None):
            raise ValueError("give exactly one of g or d")
        if self.d is not None:
            object.__setattr__(self, "d", tuple(float(x) for x in self.d))
            if len(self.d) != self.Lam:
                raise ValueError(f"d has {len(self.d)} entries, expected Lam = {self.Lam}")

    @property
    def uniform(self) -> bool:
        return self.g is not None

    def d_of(self, lam: int) -> float:
        """Level coupling d_lam for lam in 1..Lam."""
        if not 1 <= lam <= self.Lam:
            raise ValueError(f"level {lam} outside 1..{self.Lam}")
        return np.sqrt(2) * self.g if self.uniform else self.d[lam - 1]

    def edge(self, lam: int) -> float:
        return self.d_of(lam) / np.sqrt(2)

    def scaled(self, s: float) -> "TreeSpec":
        if self.uniform:
            return TreeSpec(self.Lam, g=self.g * s)
        return TreeSpec(self.Lam, d=tuple(x * s for x in self.d))

    @property
    def n_qubits(self) -> int:
        return self.Lam + 1


@dataclass(frozen=True)
class OracleSpec:
    Lam: int
    x: tuple[int, ...]
    g: float

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        if len(self.x) != 2 ** self.Lam:
            raise ValueError(f"x needs {2 ** self.Lam} entries")
        if any(v not in (0, 1) for v in self.x):
            raise ValueError("x entries must be 0 or 1")


# ---------------------------------------------------------------- helpers

def op_on(m: np.ndarray, q: int, n: int) -> np.ndarray:
    """Embed a 2x2 operator on qubit q of an n-qubit register."""
    out = np.eye(1)
    for b in range(n - 1, -1, -1):
        out = np.kron(out, m if b == q else np.eye(2))
    return out


def proj(q: int, bit: int, n: int) -> np.ndarray:
    p = np.diag([1.0, 0.0]) if bit == 0 else np.diag([0.0, 1.0])
    return op_on(p, q, n)


def bits(k: int, n: int) -> list[int]:
    """bin(k) as a list, most significant first."""
    return [(k >> b) & 1 for b in range(n - 1, -1, -1)]


# ---------------------------------------------------------------- builders

def h_loop(spec: LoopSpec) -> np.ndarray:
    n = 2 ** spec.nb
    h = np.zeros((n, n))
    for j in range(n):
        h[j, (j + 1) % n] = spec.g
        h[(j + 1) % n, j] = spec.g
    return h.astype(complex)


def circulant_eigs(spec: LoopSpec) -> np.ndarray:
    n = 2 ** spec.nb
    return 2 * spec.g * np.cos(2 * np.pi * np.arange(n) / n)


def dft_matrix(nb: int) -> np.ndarray:
    n = 2 ** nb
    w = np.exp(-2j * np.pi / n)
    j = np.arange(n)
    return w ** np.outer(j, j) / np.sqrt(n)


def h_edge(j: int, k: int, g: float, nb: int) -> np.ndarray:
    if j == k:
        raise ValueError("an edge needs two distinct nodes")
    n = 2 ** nb
    if not (0 <= j < n and 0 <= k < n):
        raise ValueError("node outside the register")
    h = np.zeros((n, n), dtype=complex)
    h[j, k] = h[k, j] = g
    return h


def h_line(spec: LineSpec) -> np.ndarray:
    nb = spec.nb
    h = np.zeros((2 ** nb, 2 ** nb), dtype=complex)
    for beta in range(nb):
        term = op_on(SX, beta, nb)
        if beta >= 1:
            term = term @ proj(beta - 1, 1, nb)
        for q in range(beta - 1):
            term = term @ proj(q, 0, nb)
        h += spec.g * term
    return h


def b_block(spec: TreeSpec, lam: int) -> np.ndarray:
    """B_{2^lam}: parents [2^{lam-1}, 2^lam) to children [2^lam, 2^{lam+1})."""
    m = 2 ** lam
    b = np.zeros((m, m))
    e = spec.edge(lam)
    for p in range(m // 2, m):
        b[2 * p - m, p] = e
        b[2 * p + 1 - m, p] = e
    return b


def h_tree(spec: TreeSpec) -> np.ndarray:
    a = np.zeros((2, 2))
    for lam in range(1, spec.Lam + 1):
        b = b_block(spec, lam)
        a = np.block([[a, b.T], [b, np.zeros_like(b)]])
    return a.astype(complex)


def h_input(spec: OracleSpec) -> np.ndarray:
    n = 2 ** spec.Lam
    diag = np.diag(np.array(spec.x, dtype=float))
    return spec.g * np.kron(SX, diag).astype(complex)


# ---------------------------------------------------------------- full graph

@dataclass(frozen=True)
class FullLayout:
    """Register for the full walk.

    Two selector qubits sit above a (Lam+1)-qubit node register.  Selector
    00 holds the loop, 01 the tree, 10 the input nodes (in_k at index k), 11
    is unused.  The loop has 2^{Lam+1} nodes so the blocks align.
    """
    Lam: int

    @property
    def node_qubits(self) -> int:
        return self.Lam + 1

    @property
    def sel_lo(self) -> int:
        return self.Lam + 1

    @property
    def sel_hi(self) -> int:
        return self.Lam + 2

    @property
    def n_qubits(self) -> int:
        return self.Lam + 3

    def index(self, block: int, node: int) -> int:
        return block * 2 ** self.node_qubits + node

    def loop(self, j):
        return self.index(0, j)

    def tree(self, j):
        return self.index(1, j)

    def inp(self, k):
        return self.index(2, k)

    def leaf(self, k):
        return self.tree(2 ** self.Lam + k)


@dataclass
class FullHamiltonian:
    h: np.ndarray
    layout: FullLayout
    parts: dict = field(default_factory=dict)

    @property
    def bulk(self):
        return self.parts["lp"] + self.parts["tr"]

    @property
    def corr(self):
        return self.parts["gl"] + self.parts["in"]


def _embed(block: np.ndarray, offset: int, dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=complex)
    m = len(block)
    out[offset:offset + m, offset:offset + m] = block
    return out


def h_full(loop: LoopSpec, tree: TreeSpec, oracle: OracleSpec, g_glue: float | None = None):
    """Full walk Hamiltonian on the FullLayout register.

    The glue edge joins loop node 0 to the tree root; input edges join leaf
    k to in_k with weight g x_k.  The glue coupling defaults to ``loop.g``.
    """
    if oracle.Lam != tree.Lam:
        raise ValueError("oracle and tree depths differ")
    lay = FullLayout(tree.Lam)
    if loop.nb != lay.node_qubits:
        raise ValueError(f"loop must have nb = Lam + 1 = {lay.node_qubits}")
    dim = 2 ** lay.n_qubits
    gg = loop.g if g_glue is None else g_glue
    parts = {
        "lp": _embed(h_loop(loop), lay.loop(0), dim),
        "tr": _embed(h_tree(tree), lay.tree(0), dim),
        "gl": h_edge(lay.loop(0), lay.tree(1), gg, lay.n_qubits),
        "in": np.zeros((dim, dim), dtype=complex),
    }
    for k, xk in enumerate(oracle.x):
        if xk:
            parts["in"][lay.leaf(k), lay.inp(k)] = oracle.g
            parts["in"][lay.inp(k), lay.leaf(k)] = oracle.g
    h = sum(parts.values())
    return FullHamiltonian(h, lay, parts)


def commutator_norm(a, b) -> float:
    return float(np.linalg.norm(a @ b - b @ a))
