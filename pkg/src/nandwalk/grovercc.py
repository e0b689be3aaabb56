"""Grover oracle and diffusion operators, and their fractional powers.

U_corr = (-1)^{P_xo} and U_bulk = 2 mu - 1, with mu = H^n |0><0| H^n the
matrix whose entries are all 1/N.  With delta > 0 both are raised to the
power 1/N^delta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Control, Gate, concat


@dataclass(frozen=True)
class GroverSpec:
    nb: int
    x_o: tuple[int, ...]  # most significant bit first
    delta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "x_o", tuple(int(v) for v in self.x_o))
        if self.nb < 1:
            raise ValueError("nb must be at least 1")
        if len(self.x_o) != self.nb or any(v not in (0, 1) for v in self.x_o):
            raise ValueError(f"x_o must be {self.nb} bits")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")

    @property
    def N(self) -> int:
        return 2 ** self.nb

    @property
    def target(self) -> int:
        return int("".join(map(str, self.x_o)), 2)

    @property
    def power(self) -> float:
        return 1.0 / self.N ** self.delta


def _pattern(bits_msb, nb) -> tuple[Control, ...]:
    return tuple(Control(nb - 1 - i, bool(v)) for i, v in enumerate(bits_msb))


def _reflection(controls, nb: int, alpha: int, frac: float) -> Circuit:
    """(-1)^{P} for frac = 1 via the ancilla kickback, exp(i pi frac P) otherwise."""
    n = max(nb, alpha + 1)
    if frac == 1.0:
        gates = (Gate("SIGX", alpha), Gate("HAD", alpha), Gate("SIGX", alpha, controls),
                 Gate("HAD", alpha), Gate("SIGX", alpha))
    else:
        gates = (Gate("PHASE", None, controls, np.pi * frac),)
    return Circuit(n, gates)


def compile_u_corr(spec: GroverSpec, ancilla: int | None = None) -> Circuit:
    alpha = spec.nb if ancilla is None else ancilla
    return _reflection(_pattern(spec.x_o, spec.nb), spec.nb, alpha, spec.power)


def compile_u_bulk(spec: GroverSpec, ancilla: int | None = None) -> Circuit:
    """exp(i pi (1 + mu) frac): a global phase and H^n (.)^{P_0} H^n."""
    alpha = spec.nb if ancilla is None else ancilla
    n = max(spec.nb, alpha + 1)
    had = Circuit(n, tuple(Gate("HAD", q) for q in range(spec.nb - 1, -1, -1)))
    zero = _reflection(_pattern([0] * spec.nb, spec.nb), spec.nb, alpha, spec.power)
    glob = Circuit(n, (Gate("PHASE", None, (), np.pi * spec.power),))
    return concat(had, zero, had, glob, num_qubits=n)


def mu_matrix(nb: int) -> np.ndarray:
    n = 2 ** nb
    return np.full((n, n), 1.0 / n, dtype=complex)


def h_grover_corr(spec: GroverSpec) -> np.ndarray:
    """Generator of U_corr^{1/N^delta}: pi P_xo / N^delta."""
    h = np.zeros((spec.N, spec.N), dtype=complex)
    h[spec.target, spec.target] = np.pi * spec.power
    return h


def h_grover_bulk(spec: GroverSpec) -> np.ndarray:
    """Generator of U_bulk^{1/N^delta}: pi (1 + mu) / N^delta."""
    return np.pi * spec.power * (np.eye(spec.N) + mu_matrix(spec.nb))
