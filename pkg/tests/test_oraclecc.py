import itertools

import numpy as np
import pytest

from nandwalk import hamlib as H
from nandwalk import matcore as M
from nandwalk import oraclecc as O
from nandwalk.circuit import Control, count, to_unitary
from nandwalk.harness import verify

PATTERNS_109 = ["00......", "010.....", "01100...", "011010..", "01101100", "01101101"]


def _check(spec, **kw):
    c = O.compile_oracle(spec, **kw)
    return verify(c, H.h_input(spec), [spec.Lam + 1]).distance


def test_band_projectors_worked_example():
    assert O.band_projectors(109, 8) == PATTERNS_109
    assert O.band_projectors(108, 8) == PATTERNS_109[:-1]


def test_band_projectors_full_and_errors():
    pats = O.band_projectors(15, 4)
    assert all(sum(O.pattern_matches(p, b) for p in pats) == 1 for b in range(16))
    with pytest.raises(ValueError):
        O.band_projectors(16, 4)
    with pytest.raises(ValueError):
        O.band_projectors(-1, 4)


@pytest.mark.parametrize("Lam", [3, 4, 5])
def test_band_projectors_disjoint_complete(Lam):
    for bmax in range(2 ** Lam):
        pats = O.band_projectors(bmax, Lam)
        hits = [sum(O.pattern_matches(p, b) for p in pats) for b in range(2 ** Lam)]
        assert hits == [1 if b <= bmax else 0 for b in range(2 ** Lam)]
        assert len(pats) == O.front_band_mcnots(bmax) == bin(bmax).count("1") + 1


def test_front_band_flip_zero():
    c = O.compile_front_band_flip(0, 3, 3)
    assert len(c.gates) == 1
    assert c.gates[0].controls == (Control(2, False), Control(1, False), Control(0, False))


def test_front_band_truth_table():
    Lam = 4
    for bmax in range(16):
        u = to_unitary(O.compile_front_band_flip(bmax, Lam, Lam))
        for b in range(16):
            out = int(np.argmax(np.abs(u[:, b])))
            assert out == b + (16 if b <= bmax else 0)


def test_pattern_controls():
    assert O.pattern_controls("1.0") == (Control(2, True), Control(0, False))


def test_oracle_trivial_cases():
    spec = H.OracleSpec(2, (0, 0, 0, 0), 0.5)
    assert len(O.compile_oracle(spec).gates) == 0
    assert _check(spec) <= 1e-10
    spec = H.OracleSpec(2, (1, 1, 1, 1), 0.5)
    assert _check(spec) <= 1e-10


@pytest.mark.parametrize("Lam", [1, 2, 3])
def test_oracle_exhaustive(Lam):
    for x in itertools.product((0, 1), repeat=2 ** Lam):
        spec = H.OracleSpec(Lam, x, 0.7)
        assert _check(spec) <= 1e-10
        assert _check(spec, bands=O.BandSpec.from_x(x, Lam)) <= 1e-10
        assert _check(spec, relabel=True) <= 1e-10


@pytest.mark.parametrize("Lam", [4, 5])
def test_oracle_random(rng, Lam):
    for _ in range(3):
        x = tuple(int(v) for v in rng.integers(0, 2, 2 ** Lam))
        spec = H.OracleSpec(Lam, x, float(rng.uniform(-1, 1)))
        assert _check(spec) <= 1e-10
        assert _check(spec, bands=O.BandSpec.from_x(x, Lam)) <= 1e-10


def test_oracle_band_example():
    spec = H.OracleSpec(3, O.BandSpec(((2, 5),), 3).to_x(), 0.7)
    assert _check(spec, bands=O.BandSpec(((2, 5),), 3)) <= 1e-10


def test_oracle_counts():
    x = (1, 1, 1, 0, 0, 1, 1, 0)
    spec = H.OracleSpec(3, x, 0.3)
    bands = O.BandSpec.from_x(x, 3)
    assert bands.bands == ((0, 2), (5, 6))
    mcnots = [g for g in O.compile_oracle(spec, bands).gates if g.kind == "SIGX"]
    assert len(mcnots) == O.oracle_mcnots(spec, bands) == 2 * (2 + 3 + 2)
    mcnots = [g for g in O.compile_oracle(spec).gates if g.kind == "SIGX"]
    assert len(mcnots) == O.oracle_mcnots(spec) == 2 * sum(x)
    assert count(O.compile_oracle(spec)).control_vertex_count == 2 * sum(x) * 3 + 1


def test_relabel_reduces_bands():
    x = (1, 1, 0, 0, 0, 0, 1, 1)
    assert len(O.BandSpec.from_x(x, 3).bands) == 2
    m = O.best_flip_mask(x, 3)
    assert len(O.BandSpec.from_x([x[b ^ m] for b in range(8)], 3).bands) == 1
    # x depends on bit 0 only: no single-bit relabelling helps
    assert O.best_flip_mask((0, 1) * 4, 3) == 0
    spec = H.OracleSpec(3, x, 0.4)
    assert _check(spec, relabel=True) <= 1e-10


def test_band_validation():
    with pytest.raises(ValueError):
        O.BandSpec(((3, 1),), 3)
    with pytest.raises(ValueError):
        O.BandSpec(((0, 2), (2, 4)), 3)
    with pytest.raises(ValueError):
        O.BandSpec(((0, 8),), 3)
    with pytest.raises(ValueError):
        O.compile_oracle(H.OracleSpec(2, (1, 0, 0, 0), 0.1), bands=O.BandSpec(((0, 1),), 2))
    with pytest.raises(ValueError):
        O.compile_oracle(H.OracleSpec(2, (1, 0, 0, 0), 0.1), ancilla=1)
