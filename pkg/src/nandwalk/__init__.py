"""Circuit compilers for the continuous-time quantum walk that evaluates a NAND formula."""

from .circuit import Circuit, Gate, Control, count, parse, serialize, to_unitary
from .hamlib import FullLayout, LineSpec, LoopSpec, OracleSpec, TreeSpec, h_full
from .suzuki import SuzukiPlan

__all__ = [
    "Circuit", "Gate", "Control", "count", "parse", "serialize", "to_unitary",
    "FullLayout", "LineSpec", "LoopSpec", "OracleSpec", "TreeSpec", "h_full", "SuzukiPlan",
]
__version__ = "0.1.0"
