"""Lie and Suzuki product formulas for two-term Hamiltonians A + B.

Factors are tracked as ``(label, scale)`` pairs in operator order, left to
right.  Adjacent factors with the same label are merged by adding scales,
which is the counting convention behind ``nexp``.  Circuits are emitted in
application order, i.e. the factor list reversed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .circuit import Circuit, concat


@dataclass(frozen=True)
class SuzukiPlan:
    k: int
    N_T: int
    t: float = 1.0
    eps: float = 0.0

    def __post_init__(self):
        if self.k < 1 or self.N_T < 1:
            raise ValueError("k and N_T must be at least 1")

    @property
    def predicted_nexp(self) -> int:
        return nexp(self.k, self.N_T)


def a_coeff(k: int) -> float:
    if k < 1:
        raise ValueError("k must be at least 1")
    return 1.0 / (4.0 - 4.0 ** (1.0 / (2 * k + 1)))


def _order_k(order) -> int | None:
    if order == "lie1":
        return None
    if order == "s2":
        return 1
    if isinstance(order, str) and order.startswith("s") and order[1:].isdigit():
        m = int(order[1:])
        if m % 2 or m < 2:
            raise ValueError(f"unknown order {order!r}")
        return m // 2
    if isinstance(order, tuple) and order[0] == "s2k":
        return int(order[1])
    raise ValueError(f"unknown order {order!r}")


def _s2k(k: int, t: float) -> list[tuple[str, float]]:
    if k == 1:
        return [("A", t / 2), ("B", t), ("A", t / 2)]
    a = a_coeff(k - 1)
    outer = _s2k(k - 1, a * t)
    return outer * 2 + _s2k(k - 1, (1 - 4 * a) * t) + outer * 2


def merge(factors):
    out: list[list] = []
    for lab, s in factors:
        if out and out[-1][0] == lab:
            out[-1][1] += s
        else:
            out.append([lab, s])
    return [(lab, s) for lab, s in out]


def factors(order, t: float, n_slices: int = 1) -> list[tuple[str, float]]:
    """Merged operator-order factor list of the Trotterized approximant."""
    k = _order_k(order)
    tau = t / n_slices
    one = [("A", tau), ("B", tau)] if k is None else _s2k(k, tau)
    return merge(one * n_slices)


def _emit(fl, exp_a, exp_b) -> Circuit:
    parts = [(exp_a if lab == "A" else exp_b)(s) for lab, s in reversed(fl)]
    widths = {p.num_qubits for p in parts}
    if len(widths) != 1:
        raise ValueError(f"factor circuits disagree on width: {sorted(widths)}")
    return concat(*parts)


def compose(order, t: float, exp_a: Callable[[float], Circuit],
            exp_b: Callable[[float], Circuit]) -> Circuit:
    return _emit(factors(order, t), exp_a, exp_b)


def trotterize(order, plan: SuzukiPlan, exp_a, exp_b) -> Circuit:
    return _emit(factors(order, plan.t, plan.N_T), exp_a, exp_b)


def product_matrix(order, t, n_slices, ua: Callable, ub: Callable):
    """Dense version: ua(s), ub(s) return the unitaries exp(isA), exp(isB)."""
    out = None
    for lab, s in factors(order, t, n_slices):
        m = (ua if lab == "A" else ub)(s)
        out = m if out is None else out @ m
    return out if out is not None else np.eye(1)


def f_exp(k: int) -> int:
    return 2 * 5 ** (k - 1) + 1


def nexp(k: int, n_t: int) -> int:
    return f_exp(k) * n_t - (n_t - 1)


def slices_for(k: int, t: float, eps: float) -> int:
    x = t ** (1 + 1 / (2 * k)) / eps ** (1 / (2 * k))
    return max(1, math.ceil(x * (1 - 1e-12)))


def k_closed_form(t: float, eps: float) -> float:
    return math.sqrt(math.log(t / eps) / (2 * math.log(5)))


def plan_for_budget(t: float, eps: float, k_max: int = 8) -> SuzukiPlan:
    """Pick k by discrete argmin of the exponential count over k = 1..k_max."""
    if not (t > 0 and 0 < eps < t):
        raise ValueError("need t > 0 and 0 < eps < t")
    best = min(range(1, k_max + 1), key=lambda k: (nexp(k, slices_for(k, t, eps)), k))
    return SuzukiPlan(best, slices_for(best, t, eps), t, eps)
