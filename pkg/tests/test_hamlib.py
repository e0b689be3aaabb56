import numpy as np
import pytest

from nandwalk import hamlib as H
from nandwalk import matcore as M
from nandwalk.circuit import SX
from nandwalk.elemgates import gray

P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])
I2 = np.eye(2)


def test_loop_table():
    h = H.h_loop(H.LoopSpec(3, 1.0))
    expect = np.zeros((8, 8))
    for j in range(8):
        expect[j, (j + 1) % 8] = expect[(j + 1) % 8, j] = 1
    assert np.array_equal(h, expect)
    assert not np.any(H.h_loop(H.LoopSpec(3, 0.0)))
    assert np.allclose(H.h_loop(H.LoopSpec(4, 0.3)).sum(axis=1), 0.6)


def test_loop_commutes_with_shift():
    h = H.h_loop(H.LoopSpec(3, 0.7))
    shift = np.roll(np.eye(8), 1, axis=0)
    assert H.commutator_norm(h, shift) == 0


def test_circulant_eigs():
    spec = H.LoopSpec(3, 0.4)
    e = H.circulant_eigs(spec)
    assert e[0] == pytest.approx(0.8)
    assert e[4] == pytest.approx(-0.8)
    assert np.allclose(np.sort(e), M.herm_eig(H.h_loop(spec))[0])
    f = H.dft_matrix(3)
    assert M.dist(f @ np.diag(e) @ f.conj().T, H.h_loop(spec)) < 1e-12


def test_tree_small():
    h = H.h_tree(H.TreeSpec(1, g=0.3))
    nz = {tuple(ix) for ix in np.argwhere(h)}
    assert nz == {(1, 2), (2, 1), (1, 3), (3, 1)}
    assert np.allclose(h[1, 2], 0.3)


def test_tree_pattern_lam2():
    h = H.h_tree(H.TreeSpec(2, g=0.5))
    edges = {(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)}
    expect = np.zeros((8, 8))
    for p, q in edges:
        expect[p, q] = expect[q, p] = 0.5
    assert np.array_equal(h.real, expect)
    assert not np.any(h[0]) and not np.any(h[:, 0])


def test_tree_explicit_d():
    spec = H.TreeSpec(3, d=(1.0, 2.0, 3.0))
    h = H.h_tree(spec)
    assert h[1, 2] == pytest.approx(1 / np.sqrt(2))
    assert h[7, 15] == pytest.approx(3 / np.sqrt(2))
    with pytest.raises(ValueError):
        H.TreeSpec(3, d=(1.0, 2.0))
    with pytest.raises(ValueError):
        H.TreeSpec(3)
    with pytest.raises(ValueError):
        H.TreeSpec(3, g=1.0, d=(1, 1, 1))


def test_tree_level_svd_constant():
    g = 0.37
    spec = H.TreeSpec(4, g=g)
    for lam in range(1, 5):
        s = np.linalg.svd(H.b_block(spec, lam)[:, 2 ** (lam - 1):], compute_uv=False)
        assert np.allclose(s, np.sqrt(2) * g)


def test_input():
    spec = H.OracleSpec(2, (1, 0, 0, 1), 0.4)
    h = H.h_input(spec)
    nz = {tuple(ix) for ix in np.argwhere(h)}
    assert nz == {(0, 4), (4, 0), (3, 7), (7, 3)}
    assert not np.any(H.h_input(H.OracleSpec(2, (0,) * 4, 0.4)))
    assert np.allclose(H.h_input(H.OracleSpec(2, (1,) * 4, 0.4)), 0.4 * np.kron(SX, np.eye(4)))
    with pytest.raises(ValueError):
        H.OracleSpec(2, (1, 0, 1), 0.4)
    with pytest.raises(ValueError):
        H.OracleSpec(1, (2, 0), 0.4)


def test_edge():
    h = H.h_edge(0, 7, 0.9, 3)
    assert {tuple(ix) for ix in np.argwhere(h)} == {(0, 7), (7, 0)}
    assert not np.any(H.h_edge(0, 7, 0.0, 3))
    assert M.is_hermitian(h)
    with pytest.raises(ValueError):
        H.h_edge(2, 2, 1.0, 3)
    with pytest.raises(ValueError):
        H.h_edge(0, 8, 1.0, 3)


def test_line_three_bits():
    g = 0.6
    expect = g * (np.kron(np.kron(I2, I2), SX) + np.kron(np.kron(I2, SX), P1)
                  + np.kron(np.kron(SX, P1), P0))
    assert np.allclose(H.h_line(H.LineSpec(3, g)), expect)


@pytest.mark.parametrize("nb", [3, 4, 5])
def test_line_is_gray_path(nb):
    h = H.h_line(H.LineSpec(nb, 1.0))
    expect = np.zeros_like(h)
    for j in range(2 ** nb - 1):
        a, b = gray(j), gray(j + 1)
        expect[a, b] = expect[b, a] = 1
    assert np.array_equal(h, expect)
    assert (np.count_nonzero(h, axis=1) <= 2).all()


def test_full_layout_and_commutators():
    loop, tree = H.LoopSpec(3, 0.2), H.TreeSpec(2, g=0.3)
    orc = H.OracleSpec(2, (1, 1, 0, 1), 0.4)
    f = H.h_full(loop, tree, orc)
    lay = f.layout
    assert lay.n_qubits == 5
    assert f.h[lay.loop(0), lay.tree(1)] == pytest.approx(0.2)
    assert f.h[lay.leaf(0), lay.inp(0)] == pytest.approx(0.4)
    assert f.h[lay.leaf(2), lay.inp(2)] == 0
    assert H.commutator_norm(f.parts["lp"], f.parts["tr"]) == 0
    assert H.commutator_norm(f.parts["gl"], f.parts["in"]) == 0
    assert M.is_hermitian(f.h)
    assert np.allclose(f.bulk + f.corr, f.h)


def test_full_zero_couplings():
    f = H.h_full(H.LoopSpec(3, 0.0), H.TreeSpec(2, g=0.0), H.OracleSpec(2, (1, 0, 1, 0), 0.0))
    assert not np.any(f.h)


def test_full_mismatch():
    with pytest.raises(ValueError):
        H.h_full(H.LoopSpec(4, 0.1), H.TreeSpec(2, g=0.1), H.OracleSpec(2, (1,) * 4, 0.1))
    with pytest.raises(ValueError):
        H.h_full(H.LoopSpec(3, 0.1), H.TreeSpec(2, g=0.1), H.OracleSpec(3, (1,) * 8, 0.1))
