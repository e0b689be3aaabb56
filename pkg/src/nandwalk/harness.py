"""Verification, error-order fits, sweeps, and full-walk assembly."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import matcore, suzuki
from .circuit import Circuit, Control, add_controls, concat, count, g_cnot, relabel, to_unitary, widen
from .hamlib import FullLayout, LoopSpec, OracleSpec, TreeSpec
from .loopline import EdgeSpec, compile_edge, compile_loop
from .oraclecc import compile_oracle
from .treecc import compile_tree

NOISE_FLOOR = 1e-8


@dataclass(frozen=True)
class Verification:
    distance: float
    restricted: bool


def restrict(u: np.ndarray, n_qubits: int, ancillas: Sequence[int]) -> np.ndarray:
    """Block of u on the subspace where every ancilla is |0>, data bits in order."""
    anc = sorted(set(ancillas))
    if any(not 0 <= a < n_qubits for a in anc):
        raise ValueError(f"ancilla outside 0..{n_qubits - 1}")
    data = [q for q in range(n_qubits) if q not in anc]
    idx = [sum(((k >> i) & 1) << q for i, q in enumerate(data)) for k in range(2 ** len(data))]
    return u[np.ix_(idx, idx)]


def verify(c: Circuit, h, ancillas: Iterable[int] = ()) -> Verification:
    h = matcore.as_cmatrix(h)
    anc = list(ancillas)
    u = to_unitary(c)
    if anc:
        u = restrict(u, c.num_qubits, anc)
    if u.shape != h.shape:
        raise ValueError(f"circuit block is {u.shape[0]}-dimensional, H is {h.shape[0]}")
    return Verification(matcore.dist(u, matcore.exp_i(h)), bool(anc))


def _check_grid(gs) -> np.ndarray:
    gs = np.asarray(list(gs), dtype=float)
    if len(gs) < 3:
        raise ValueError("need at least 3 grid points")
    if np.any(gs <= 0):
        raise ValueError("grid points must be positive")
    r = gs[1:] / gs[:-1]
    if np.any(np.abs(r - 1) < 1e-12) or not np.allclose(r, r[0], rtol=1e-6):
        raise ValueError("grid must be geometric with distinct points")
    return gs


def fit_slope(gs, ds) -> float | None:
    """Least-squares slope of log d vs log g; None when all d sit at the noise floor."""
    ds = np.asarray(ds, dtype=float)
    if np.max(ds) < NOISE_FLOOR:
        return None
    return float(np.polyfit(np.log(gs), np.log(ds), 1)[0])


@dataclass(frozen=True)
class SweepRow:
    g: float
    distance: float
    cnots: int
    vertices: int


def sweep(compiler: Callable[[float], Circuit], h_of_g: Callable[[float], np.ndarray],
          g_grid, ancillas: Iterable[int] = ()) -> list[SweepRow]:
    gs = _check_grid(g_grid)
    rows = []
    for g in gs:
        c = compiler(float(g))
        n = count(c)
        rows.append(SweepRow(float(g), verify(c, h_of_g(float(g)), ancillas).distance,
                             n.cnot_count, n.control_vertex_count))
    return rows


def error_order(compiler, h_of_g, g_grid, ancillas: Iterable[int] = ()) -> float | None:
    rows = sweep(compiler, h_of_g, g_grid, ancillas)
    return fit_slope([r.g for r in rows], [r.distance for r in rows])


def sweep_csv(rows: Sequence[SweepRow], slope: float | None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["g", "distance", "cnots", "vertices"])
    for r in rows:
        w.writerow([f"{r.g:.12e}", f"{r.distance:.12e}", r.cnots, r.vertices])
    buf.write(f"# slope={'NA' if slope is None else f'{slope:.3f}'}\n")
    return buf.getvalue()


# ---------------------------------------------------------------- full walk

def lift_circuit(c: Circuit, controls: Sequence[Control], num_qubits: int) -> Circuit:
    """Add ``controls`` to every gate.

    The circuit IR carries any number of controls per gate, so lifting
    never needs an elementary-gate expansion here.
    """
    return add_controls(widen(c, num_qubits), controls, num_qubits)


def _check_layout(loop: LoopSpec, tree: TreeSpec, oracle: OracleSpec) -> FullLayout:
    if oracle.Lam != tree.Lam:
        raise ValueError("oracle and tree depths differ")
    lay = FullLayout(tree.Lam)
    if loop.nb != lay.node_qubits:
        raise ValueError(f"loop must have nb = Lam + 1 = {lay.node_qubits}")
    return lay


@dataclass(frozen=True)
class WalkParts:
    layout: FullLayout
    ancilla: int
    num_qubits: int
    exp_bulk: Callable[[float], Circuit]
    exp_corr: Callable[[float], Circuit]


def walk_parts(loop: LoopSpec, tree: TreeSpec, oracle: OracleSpec, g_glue: float | None = None,
               variant: str = "order3") -> WalkParts:
    """Factor builders for exp(is H_bulk) and exp(is H_corr) on the full register.

    One ancilla above the FullLayout register is shared by the loop
    diagonal and the oracle.
    """
    lay = _check_layout(loop, tree, oracle)
    Lam, hi, lo = lay.Lam, lay.sel_hi, lay.sel_lo
    anc = lay.n_qubits
    n = anc + 1
    gg = loop.g if g_glue is None else g_glue
    sel = Circuit(n, (g_cnot(hi, lo), g_cnot(hi, Lam)))

    def exp_bulk(s: float) -> Circuit:
        lp = compile_loop(LoopSpec(loop.nb, loop.g * s), ancilla=anc)
        tr = compile_tree(tree.scaled(s), variant)
        return concat(lift_circuit(lp, (Control(hi, False), Control(lo, False)), n),
                      lift_circuit(tr, (Control(hi, False), Control(lo, True)), n), num_qubits=n)

    def exp_corr(s: float) -> Circuit:
        glue = compile_edge(EdgeSpec(lay.loop(0), lay.tree(1), gg * s, "glue", lay.n_qubits), n)
        orc = compile_oracle(OracleSpec(Lam, oracle.x, oracle.g * s), ancilla=Lam + 1)
        orc = relabel(orc, {Lam: hi, Lam + 1: anc}, n)
        orc = lift_circuit(orc, (Control(lo, True), Control(Lam, True)), n)
        return concat(glue, sel, orc, sel, num_qubits=n)

    return WalkParts(lay, anc, n, exp_bulk, exp_corr)


def compile_walk_step(loop: LoopSpec, tree: TreeSpec, oracle: OracleSpec, plan: suzuki.SuzukiPlan,
                      order="s2", variant: str = "order3", g_glue: float | None = None) -> Circuit:
    """Trotterized exp(i t (H_bulk + H_corr)) with plan.N_T slices of the given order."""
    p = walk_parts(loop, tree, oracle, g_glue, variant)
    return suzuki.trotterize(order, plan, p.exp_bulk, p.exp_corr)


def walk_counts(loop, tree, oracle, plan, order="s2", variant="order3", g_glue=None):
    """Per-factor counts weighted by how often each factor appears."""
    p = walk_parts(loop, tree, oracle, g_glue, variant)
    total = [0, 0, 0]
    for lab, s in suzuki.factors(order, plan.t, plan.N_T):
        c = count((p.exp_bulk if lab == "A" else p.exp_corr)(s))
        total[0] += c.cnot_count
        total[1] += c.control_vertex_count
        total[2] += c.gate_count
    return tuple(total)


def log_ratio(a: float, b: float) -> float:
    return math.log2(a / b)
