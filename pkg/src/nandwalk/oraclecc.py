"""Input (oracle) evolution exp(i g sx(Lam) x(b)).

Register: leaf index bits 0..Lam-1, selector qubit Lam, ancilla Lam+1.
The pattern strings used here are written most significant bit first with
'0', '1' and '.' (free).
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Control, Gate, concat, g_rot
from .hamlib import OracleSpec


@dataclass(frozen=True)
class BandSpec:
    bands: tuple[tuple[int, int], ...]
    Lam: int

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple((int(a), int(b)) for a, b in self.bands))
        prev = -2
        for lo, hi in self.bands:
            if not 0 <= lo <= hi < 2 ** self.Lam:
                raise ValueError(f"band [{lo}, {hi}] out of range for Lam = {self.Lam}")
            if lo <= prev:
                raise ValueError("bands must be sorted and disjoint")
            prev = hi

    def to_x(self) -> tuple[int, ...]:
        x = [0] * 2 ** self.Lam
        for lo, hi in self.bands:
            for b in range(lo, hi + 1):
                x[b] = 1
        return tuple(x)

    @classmethod
    def from_x(cls, x, Lam: int) -> "BandSpec":
        bands, start = [], None
        for b, v in enumerate(list(x) + [0]):
            if v and start is None:
                start = b
            elif not v and start is not None:
                bands.append((start, b - 1))
                start = None
        return cls(tuple(bands), Lam)


def _check_bmax(bmax: int, Lam: int):
    if not 0 <= bmax < 2 ** Lam:
        raise ValueError(f"bmax = {bmax} outside 0..{2 ** Lam - 1}")


def band_projectors(bmax: int, Lam: int) -> list[str]:
    """Disjoint patterns whose projectors sum to sum_{b <= bmax} P_b."""
    _check_bmax(bmax, Lam)
    bits = format(bmax, f"0{Lam}b")
    out = []
    for i, ch in enumerate(bits):
        if ch == "1":
            out.append(bits[:i] + "0" + "." * (Lam - i - 1))
    out.append(bits)
    return out


def pattern_controls(pattern: str) -> tuple[Control, ...]:
    Lam = len(pattern)
    return tuple(Control(Lam - 1 - i, ch == "1") for i, ch in enumerate(pattern) if ch != ".")


def pattern_matches(pattern: str, b: int) -> bool:
    s = format(b, f"0{len(pattern)}b")
    return all(p == "." or p == c for p, c in zip(pattern, s))


def compile_front_band_flip(bmax: int, Lam: int, alpha: int, num_qubits: int | None = None) -> Circuit:
    n = num_qubits or max(Lam, alpha + 1)
    gates = tuple(Gate("SIGX", alpha, pattern_controls(p)) for p in band_projectors(bmax, Lam))
    return Circuit(n, gates)


def _flip_for_bands(bands: BandSpec, alpha: int, n: int) -> Circuit:
    parts = []
    for lo, hi in bands.bands:
        parts.append(compile_front_band_flip(hi, bands.Lam, alpha, n))
        if lo > 0:
            parts.append(compile_front_band_flip(lo - 1, bands.Lam, alpha, n))
    return concat(*parts, num_qubits=n) if parts else Circuit(n)


def _flip_for_minterms(x, Lam: int, alpha: int, n: int) -> Circuit:
    gates = tuple(Gate("SIGX", alpha, pattern_controls(format(b, f"0{Lam}b")))
                  for b, v in enumerate(x) if v)
    return Circuit(n, gates)


def best_flip_mask(x, Lam: int) -> int:
    """Single-bit-flip relabelling b -> b ^ m that minimizes the band count."""
    def nbands(m):
        return len(BandSpec.from_x([x[b ^ m] for b in range(2 ** Lam)], Lam).bands)
    return min(range(2 ** Lam), key=lambda m: (nbands(m), m))


def compile_oracle(spec: OracleSpec, bands: BandSpec | None = None, ancilla: int | None = None,
                   relabel: bool = False) -> Circuit:
    """sx(alpha)^pi . exp(i g sx(Lam))^{n(alpha)} . sx(alpha)^pi.

    pi is built from front-band flips when ``bands`` is given (or when
    ``relabel`` picks a leaf relabelling), otherwise from one MCNOT per
    minterm.  The ancilla must start in |0>.
    """
    Lam = spec.Lam
    alpha = Lam + 1 if ancilla is None else ancilla
    if alpha <= Lam:
        raise ValueError("the ancilla must sit above the selector qubit")
    n = alpha + 1
    if bands is not None and bands.to_x() != spec.x:
        raise ValueError("bands disagree with x")
    if not any(spec.x):
        return Circuit(n)

    pre = Circuit(n)
    if relabel:
        m = best_flip_mask(spec.x, Lam)
        xs = tuple(spec.x[b ^ m] for b in range(2 ** Lam))
        bands = BandSpec.from_x(xs, Lam)
        pre = Circuit(n, tuple(Gate("SIGX", q) for q in range(Lam - 1, -1, -1) if (m >> q) & 1))
    flip = _flip_for_bands(bands, alpha, n) if bands is not None else _flip_for_minterms(spec.x, Lam, alpha, n)
    core = Circuit(n, (g_rot("X", spec.g, Lam, (Control(alpha, True),)),))
    return concat(pre, flip, core, flip, pre, num_qubits=n)


# ---------------------------------------------------------------- counts

def front_band_mcnots(bmax: int) -> int:
    return bin(bmax).count("1") + 1


def band_mcnots(bands: BandSpec) -> int:
    """MCNOTs in one application of pi for a banded x."""
    return sum(front_band_mcnots(hi) + (front_band_mcnots(lo - 1) if lo > 0 else 0)
               for lo, hi in bands.bands)


def oracle_mcnots(spec: OracleSpec, bands: BandSpec | None = None) -> int:
    """MCNOTs in the full oracle circuit (pi appears twice)."""
    if not any(spec.x):
        return 0
    per = band_mcnots(bands) if bands is not None else sum(spec.x)
    return 2 * per

