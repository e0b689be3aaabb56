"""Command-line front end: ``nandwalk compile | verify | sweep``.

Exit codes: 0 success, 1 verification failed, 2 bad parameters.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import grovercc, hamlib, harness, loopline, oraclecc, suzuki, treecc
from .circuit import Circuit, count, parse, serialize

GRAPHS = ("loop", "tree", "edge", "line", "oracle", "grover-corr", "grover-bulk", "walk-step")
EXACT = {"loop", "edge", "oracle", "grover-corr", "grover-bulk"}
EXACT_TOL = 1e-9


class UsageError(Exception):
    pass


@dataclass
class Problem:
    circuit: Circuit
    h: np.ndarray
    ancillas: list[int]


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--graph {args.graph} needs --{n.replace('_', '-')}")


def _bits(s: str, name: str) -> tuple[int, ...]:
    if not s or any(ch not in "01" for ch in s):
        raise UsageError(f"--{name} must be a non-empty 0/1 string")
    return tuple(int(ch) for ch in s)


def _bands(s: str, Lam: int) -> oraclecc.BandSpec:
    try:
        pairs = [tuple(int(v) for v in part.split(":")) for part in s.split(",") if part]
        if any(len(p) != 2 for p in pairs):
            raise ValueError("each band is lo:hi")
        return oraclecc.BandSpec(tuple(pairs), Lam)
    except ValueError as e:
        raise UsageError(f"bad --bands: {e}") from None


def _order(args, allowed, default):
    o = args.order or default
    if o not in allowed:
        raise UsageError(f"--order for {args.graph} must be one of {', '.join(allowed)}")
    return o


def _tree_spec(args, g):
    if args.d is not None:
        if g is not None:
            raise UsageError("give --g or --d, not both")
        try:
            d = tuple(float(v) for v in args.d.split(","))
        except ValueError:
            raise UsageError("--d must be a comma-separated list of numbers") from None
        return hamlib.TreeSpec(args.lambda_, d=d)
    return hamlib.TreeSpec(args.lambda_, g=g)


def build(args, g: float | None = None) -> Problem:
    """Circuit, reference Hamiltonian and ancilla list for the chosen graph."""
    if g is not None:
        args = argparse.Namespace(**{**vars(args), "g": g})
    g = args.g
    kind = args.graph
    try:
        if kind == "loop":
            _need(args, "nb", "g")
            spec = hamlib.LoopSpec(args.nb, g)
            return Problem(loopline.compile_loop(spec), hamlib.h_loop(spec), [args.nb])
        if kind == "edge":
            _need(args, "nb", "g", "j", "k", "sign")
            spec = loopline.EdgeSpec(args.j, args.k, g, args.sign, args.nb)
            return Problem(loopline.compile_edge(spec),
                           hamlib.h_edge(args.j, args.k, spec.coupling, args.nb), [])
        if kind == "line":
            _need(args, "nb", "g")
            spec = hamlib.LineSpec(args.nb, g)
            order = _order(args, ("lie1", "s2", "s4"), "lie1")
            return Problem(loopline.compile_line(spec, order), hamlib.h_line(spec), [])
        if kind == "tree":
            _need(args, "lambda_")
            if args.d is None:
                _need(args, "g")
            spec = _tree_spec(args, g)
            order = _order(args, ("order3", "order4"), "order3")
            return Problem(treecc.compile_tree(spec, order), hamlib.h_tree(spec), [])
        if kind == "oracle":
            _need(args, "lambda_", "g")
            Lam = args.lambda_
            bands = _bands(args.bands, Lam) if args.bands else None
            if args.x is not None:
                x = _bits(args.x, "x")
            elif bands is not None:
                x = bands.to_x()
            else:
                raise UsageError("--graph oracle needs --x or --bands")
            spec = hamlib.OracleSpec(Lam, x, g)
            return Problem(oraclecc.compile_oracle(spec, bands), hamlib.h_input(spec), [Lam + 1])
        if kind in ("grover-corr", "grover-bulk"):
            _need(args, "x")
            x = _bits(args.x, "x")
            spec = grovercc.GroverSpec(len(x), x, args.delta)
            if kind == "grover-corr":
                return Problem(grovercc.compile_u_corr(spec), grovercc.h_grover_corr(spec), [spec.nb])
            return Problem(grovercc.compile_u_bulk(spec), grovercc.h_grover_bulk(spec), [spec.nb])
        if kind == "walk-step":
            _need(args, "lambda_", "g", "x")
            Lam = args.lambda_
            order = _order(args, ("lie1", "s2", "s4"), "s2")
            loop = hamlib.LoopSpec(Lam + 1, g)
            tree = hamlib.TreeSpec(Lam, g=g)
            orc = hamlib.OracleSpec(Lam, _bits(args.x, "x"), g)
            c = harness.compile_walk_step(loop, tree, orc, suzuki.SuzukiPlan(1, args.trotter), order)
            return Problem(c, hamlib.h_full(loop, tree, orc).h, [c.num_qubits - 1])
    except ValueError as e:
        raise UsageError(str(e)) from None
    raise UsageError(f"unknown graph {kind!r}")


# ---------------------------------------------------------------- commands

def _counts_line(c: Circuit) -> str:
    n = count(c)
    return f"gates={n.gate_count} cnots={n.cnot_count} vertices={n.control_vertex_count}"


def cmd_compile(args) -> int:
    p = build(args)
    with open(args.out, "w") as fh:
        fh.write(serialize(p.circuit, p.ancillas))
    print(_counts_line(p.circuit))
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.inp) as fh:
            c, anc = parse(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read {args.inp}: {e.strerror}") from None
    except ValueError as e:
        raise UsageError(f"cannot parse {args.inp}: {e}") from None
    ref = build(args)
    try:
        d = harness.verify(c, ref.h, anc).distance
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(f"distance={d:.6e}")
    if args.graph in EXACT and not d <= EXACT_TOL:
        return 1
    return 0


def cmd_sweep(args) -> int:
    try:
        gs = [float(v) for v in args.g_list.split(",") if v]
    except ValueError:
        raise UsageError("--g-list must be comma-separated numbers") from None
    if len(gs) < 3:
        raise UsageError("--g-list needs at least 3 points")
    first = build(args, gs[0])
    try:
        rows = harness.sweep(lambda g: build(args, g).circuit, lambda g: build(args, g).h, gs,
                             first.ancillas)
    except ValueError as e:
        raise UsageError(str(e)) from None
    slope = harness.fit_slope([r.g for r in rows], [r.distance for r in rows])
    text = harness.sweep_csv(rows, slope)
    with open(args.csv, "w") as fh:
        fh.write(text)
    print(text.splitlines()[-1])
    return 0


def _spec_flags(p: argparse.ArgumentParser):
    p.add_argument("--graph", required=True, choices=GRAPHS)
    p.add_argument("--lambda", dest="lambda_", type=int)
    p.add_argument("--nb", type=int)
    p.add_argument("--g", type=float)
    p.add_argument("--d", help="level couplings d1,...,dLam")
    p.add_argument("--x", help="bit string (oracle: x_0 first; grover: target, MSB first)")
    p.add_argument("--bands", help="lo:hi,... leaf ranges where x = 1")
    p.add_argument("--order", help="lie1|s2|s4 (line, walk-step) or order3|order4 (tree)")
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sign", choices=("cut", "glue"))
    p.add_argument("--delta", type=float, default=0.0, help="fractional power for grover graphs")
    p.add_argument("--trotter", type=int, default=4, help="Trotter slices for walk-step")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nandwalk", description="Compile NAND-tree walk evolutions to circuits.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    pc = sub.add_parser("compile", help="write a circuit file")
    _spec_flags(pc)
    pc.add_argument("--out", required=True)
    pv = sub.add_parser("verify", help="compare a circuit file with exp(iH)")
    _spec_flags(pv)
    pv.add_argument("--in", dest="inp", required=True)
    ps = sub.add_parser("sweep", help="error vs coupling as CSV")
    _spec_flags(ps)
    ps.add_argument("--g-list", required=True)
    ps.add_argument("--csv", required=True)
    return ap


COMMANDS: dict[str, Callable] = {"compile": cmd_compile, "verify": cmd_verify, "sweep": cmd_sweep}


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"nandwalk: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
