"""Gate-level IR: polarity-tagged controls, unitary semantics, counts, text format.

Gate lists are stored in application order: ``gates[0]`` acts on the state
first, so it is the rightmost factor of the operator product.  Qubit 0 is
the rightmost tensor factor, and a basis state's index is the binary number
formed by the qubits.

Rotations follow ``ROTX(t) = exp(i t sigma_x)`` (no factor of 1/2), and
likewise for ROTY and ROTZ.  PHASE with a target is ``diag(1, e^{it})`` on
that target; PHASE with no target is the global phase ``e^{it}`` applied on
the subspace where its controls hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_SIM_QUBITS = 12

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
HAD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
I2 = np.eye(2, dtype=complex)

ROT_KINDS = ("ROTX", "ROTY", "ROTZ")
FIXED_KINDS = ("SIGX", "SIGY", "SIGZ", "HAD")
KINDS = ROT_KINDS + FIXED_KINDS + ("SWAP", "PHASE", "U2")
_TEXT_NAME = {k: k for k in KINDS}
_TEXT_NAME["PHASE"] = "PHAS"
_FROM_TEXT = {v: k for k, v in _TEXT_NAME.items()}


def rot(axis: str, theta: float) -> np.ndarray:
    s = {"X": SX, "Y": SY, "Z": SZ}[axis]
    return np.cos(theta) * I2 + 1j * np.sin(theta) * s


@dataclass(frozen=True)
class Control:
    qubit: int
    positive: bool = True

    def __str__(self):
        return f"{self.qubit}{'T' if self.positive else 'F'}"


def ctrl(*specs) -> tuple[Control, ...]:
    """Build controls from ``(qubit, polarity)`` pairs or ``"3T"`` style strings."""
    out = []
    for s in specs:
        if isinstance(s, Control):
            out.append(s)
        elif isinstance(s, str):
            out.append(Control(int(s[:-1]), s[-1] == "T"))
        else:
            q, p = s
            out.append(Control(int(q), bool(p)))
    return tuple(out)


def pos(*qubits) -> tuple[Control, ...]:
    return tuple(Control(int(q), True) for q in qubits)


def neg(*qubits) -> tuple[Control, ...]:
    return tuple(Control(int(q), False) for q in qubits)


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int | None = None
    controls: tuple[Control, ...] = ()
    angle: float = 0.0
    target2: int | None = None
    matrix: tuple | None = None  # U2 payload as a nested tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "controls", tuple(self.controls))
        cq = [c.qubit for c in self.controls]
        if len(set(cq)) != len(cq):
            raise ValueError(f"duplicate control qubit in {cq}")
        if self.kind != "PHASE" and self.target is None:
            raise ValueError(f"{self.kind} needs a target")
        if self.kind == "SWAP":
            if self.target2 is None or self.target2 == self.target:
                raise ValueError("SWAP needs two distinct qubits")
        if set(self.qubits_touched()) & set(cq):
            raise ValueError("a target qubit also appears as a control")
        if self.kind == "U2":
            u = np.asarray(self.matrix, dtype=complex)
            if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - I2)) > 1e-10:
                raise ValueError("U2 payload is not a 2x2 unitary")

    def qubits_touched(self) -> tuple[int, ...]:
        out = []
        if self.target is not None:
            out.append(self.target)
        if self.target2 is not None:
            out.append(self.target2)
        return tuple(out)

    def all_qubits(self) -> tuple[int, ...]:
        return self.qubits_touched() + tuple(c.qubit for c in self.controls)

    def op(self) -> np.ndarray | None:
        """The 2x2 matrix acting on the target (None for SWAP and bare PHASE)."""
        k = self.kind
        if k in ROT_KINDS:
            return rot(k[-1], self.angle)
        if k == "SIGX":
            return SX
        if k == "SIGY":
            return SY
        if k == "SIGZ":
            return SZ
        if k == "HAD":
            return HAD
        if k == "U2":
            return np.asarray(self.matrix, dtype=complex)
        if k == "PHASE" and self.target is not None:
            return np.diag([1.0, np.exp(1j * self.angle)])
        return None

    def inverse(self) -> "Gate":
        k = self.kind
        if k in ROT_KINDS or k == "PHASE":
            return Gate(k, self.target, self.controls, -self.angle)
        if k == "U2":
            return u2(np.asarray(self.matrix).conj().T, self.target, self.controls)
        if k == "SIGY":
            return self  # sigma_y is its own inverse
        return self

    def with_controls(self, extra: Sequence[Control]) -> "Gate":
        return Gate(self.kind, self.target, tuple(extra) + self.controls,
                    self.angle, self.target2, self.matrix)

    def relabel(self, mapping: dict[int, int]) -> "Gate":
        m = lambda q: None if q is None else mapping.get(q, q)
        cs = tuple(Control(m(c.qubit), c.positive) for c in self.controls)
        return Gate(self.kind, m(self.target), cs, self.angle, m(self.target2), self.matrix)


def u2(m, target: int, controls=()) -> Gate:
    m = np.asarray(m, dtype=complex)
    payload = tuple(tuple(complex(x) for x in row) for row in m)
    return Gate("U2", target, tuple(controls), matrix=payload)


def g_rot(axis: str, theta: float, target: int, controls=()) -> Gate:
    return Gate("ROT" + axis, target, tuple(controls), float(theta))


def g_cnot(control: int, target: int) -> Gate:
    return Gate("SIGX", target, pos(control))


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("num_qubits must be positive")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in g.all_qubits():
                if not 0 <= q < self.num_qubits:
                    raise ValueError(f"qubit {q} out of range for width {self.num_qubits}")

    def __len__(self):
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        return concat(self, other)


def concat(*circuits: Circuit, num_qubits: int | None = None) -> Circuit:
    if not circuits and num_qubits is None:
        raise ValueError("nothing to concatenate")
    n = num_qubits if num_qubits is not None else max(c.num_qubits for c in circuits)
    gates = []
    for c in circuits:
        gates.extend(c.gates)
    return Circuit(n, tuple(gates))


def widen(c: Circuit, n: int) -> Circuit:
    if n < c.num_qubits:
        raise ValueError("cannot shrink a circuit")
    return Circuit(n, c.gates)


def add_controls(c: Circuit, controls: Sequence[Control], num_qubits: int | None = None) -> Circuit:
    n = c.num_qubits if num_qubits is None else num_qubits
    return Circuit(n, tuple(g.with_controls(controls) for g in c.gates))


def relabel(c: Circuit, mapping: dict[int, int], num_qubits: int) -> Circuit:
    return Circuit(num_qubits, tuple(g.relabel(mapping) for g in c.gates))


def adjoint(c: Circuit) -> Circuit:
    return Circuit(c.num_qubits, tuple(g.inverse() for g in reversed(c.gates)))


def conjugate_by(outer: Circuit, inner: Circuit) -> Circuit:
    """Circuit for outer . inner . outer^dag (the o-dot product)."""
    if outer.num_qubits != inner.num_qubits:
        raise ValueError("width mismatch")
    return Circuit(inner.num_qubits, adjoint(outer).gates + inner.gates + outer.gates)


# ---------------------------------------------------------------- semantics

def _apply(psi: np.ndarray, g: Gate, n: int) -> None:
    """Apply gate in place to a tensor of shape (2,)*n + (cols,)."""
    ax = lambda q: n - 1 - q
    idx: list = [slice(None)] * (n + 1)
    for c in g.controls:
        idx[ax(c.qubit)] = 1 if c.positive else 0
    sub = psi[tuple(idx)]  # view
    # axis positions in the view shift down by the number of fixed axes above
    fixed = sorted(ax(c.qubit) for c in g.controls)

    def vax(q):
        a = ax(q)
        return a - sum(1 for f in fixed if f < a)

    if g.kind == "SWAP":
        a, b = vax(g.target), vax(g.target2)
        sub[...] = np.swapaxes(sub, a, b).copy()
        return
    m = g.op()
    if m is None:
        sub *= np.exp(1j * g.angle)
        return
    a = vax(g.target)
    moved = np.moveaxis(sub, a, 0)
    moved[...] = np.tensordot(m, moved, axes=(1, 0))


def apply_to(c: Circuit, mat: np.ndarray) -> np.ndarray:
    n = c.num_qubits
    dim = 2 ** n
    psi = np.array(mat, dtype=complex).reshape((2,) * n + (-1,))
    for g in c.gates:
        _apply(psi, g, n)
    return psi.reshape(dim, -1)


def to_unitary(c: Circuit) -> np.ndarray:
    if c.num_qubits > MAX_SIM_QUBITS:
        raise ValueError(f"{c.num_qubits} qubits exceeds the simulator limit {MAX_SIM_QUBITS}")
    return apply_to(c, np.eye(2 ** c.num_qubits, dtype=complex))


def gate_unitary(g: Gate, n: int) -> np.ndarray:
    return to_unitary(Circuit(n, (g,)))


# ---------------------------------------------------------------- counting

@dataclass(frozen=True)
class Counts:
    cnot_count: int
    control_vertex_count: int
    gate_count: int


def count(c: Circuit) -> Counts:
    cn = sum(1 for g in c.gates if g.kind == "SIGX" and len(g.controls) == 1)
    cv = sum(len(g.controls) for g in c.gates)
    return Counts(cn, cv, len(c.gates))


# ---------------------------------------------------------------- text format

def _fmt(x: float) -> str:
    return "%.15e" % x


def gate_to_line(g: Gate) -> str:
    parts = [_TEXT_NAME[g.kind]]
    if g.kind in ROT_KINDS or g.kind == "PHASE":
        parts.append(_fmt(g.angle))
    if g.kind == "U2":
        m = np.asarray(g.matrix, dtype=complex)
        for x in m.reshape(-1):
            parts += [_fmt(x.real), _fmt(x.imag)]
    if g.target is not None:
        parts.append("ON")
        parts.append(str(g.target))
        if g.target2 is not None:
            parts.append(str(g.target2))
    if g.controls:
        parts.append("IF")
        parts += [str(c) for c in g.controls]
    return " ".join(parts)


def serialize(c: Circuit, ancillas: Iterable[int] | None = None, header: Sequence[str] = ()) -> str:
    lines = [f"NUMQUBITS {c.num_qubits}"]
    for h in header:
        lines.append("# " + h)
    if ancillas is not None:
        anc = " ".join(str(a) for a in ancillas)
        lines.append(("# ANCILLAS " + anc).rstrip())
    lines += [gate_to_line(g) for g in c.gates]
    return "\n".join(lines) + "\n"


def parse_line(line: str) -> Gate:
    tok = line.split()
    if not tok or tok[0] not in _FROM_TEXT:
        raise ValueError(f"cannot parse gate line: {line!r}")
    kind = _FROM_TEXT[tok[0]]
    i = 1
    angle = 0.0
    matrix = None
    if kind in ROT_KINDS or kind == "PHASE":
        angle = float(tok[i])
        i += 1
    if kind == "U2":
        vals = [float(x) for x in tok[i:i + 8]]
        i += 8
        m = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
        matrix = tuple(tuple(complex(x) for x in row) for row in m.reshape(2, 2))
    target = target2 = None
    if i < len(tok) and tok[i] == "ON":
        i += 1
        target = int(tok[i])
        i += 1
        if i < len(tok) and tok[i] != "IF":
            target2 = int(tok[i])
            i += 1
    controls: tuple[Control, ...] = ()
    if i < len(tok):
        if tok[i] != "IF":
            raise ValueError(f"unexpected token {tok[i]!r} in {line!r}")
        controls = ctrl(*tok[i + 1:])
    return Gate(kind, target, controls, angle, target2, matrix)


def parse(text: str) -> tuple[Circuit, list[int]]:
    """Parse the text format; returns the circuit and its declared ancillas."""
    n = None
    ancillas: list[int] = []
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].split()
            if body and body[0] == "ANCILLAS":
                ancillas = [int(x) for x in body[1:]]
            continue
        if n is None:
            head = line.split()
            if head[0] != "NUMQUBITS" or len(head) != 2:
                raise ValueError("first line must be NUMQUBITS <n>")
            n = int(head[1])
            continue
        gates.append(parse_line(line))
    if n is None:
        raise ValueError("missing NUMQUBITS line")
    return Circuit(n, tuple(gates)), ancillas
