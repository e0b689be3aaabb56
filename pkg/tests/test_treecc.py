import itertools

import numpy as np
import pytest

from nandwalk import hamlib as H
from nandwalk import matcore as M
from nandwalk import treecc as T
from nandwalk.circuit import Control, count, to_unitary
from nandwalk.harness import verify

from helpers import slope


def test_minlam_table():
    table = {0: 1, 1: 2, 2: 3, 3: 3, **{s: 4 for s in range(4, 8)}, **{s: 5 for s in range(8, 16)}, 16: 6}
    assert {s: T.minlam(s) for s in table} == table
    with pytest.raises(ValueError):
        T.minlam(-1)


def test_strand_matrices():
    spec = H.TreeSpec(5, d=(1.0, 2.0, 3.0, 4.0, 5.0))
    m = T.strand_matrices(0, 5, spec)
    assert m.nodes == (1, 3, 7, 15, 31)
    assert np.array_equal(np.diag(m.calA, 1), [1, 2, 3, 4])
    assert m.calB == 5.0
    assert T.strand_matrices(1, 5, spec).nodes == (2, 6, 14, 30)
    m8 = T.strand_matrices(8, 5, spec)
    assert m8.nodes == (23,) and not np.any(m8.calA)
    with pytest.raises(ValueError):
        T.strand_matrices(16, 5, spec)


def test_strands_partition_cal_a():
    spec = H.TreeSpec(4, g=0.3)
    total = sum(T.strand_embed(s, 4, spec) for s in range(8))
    assert np.allclose(total, T.cal_a(spec))


@pytest.mark.parametrize("Lam", [1, 2, 3, 4])
def test_calF_diagonalizes(Lam):
    spec = H.TreeSpec(Lam, g=0.3)
    f = to_unitary(T.calF_circuit(Lam))
    assert np.max(np.abs(f.conj().T @ H.h_tree(spec) @ f - T.cal_a(spec))) <= 1e-10


def test_calF_exponential_identity():
    spec = H.TreeSpec(3, g=0.4)
    f = to_unitary(T.calF_circuit(3))
    assert M.dist(f @ M.exp_i(T.cal_a(spec)) @ f.conj().T, M.exp_i(H.h_tree(spec))) <= 1e-9


def test_calF_lam1_single_gate():
    c = T.calF_circuit(1)
    assert len(c.gates) == 1 and c.gates[0].kind == "ROTY"
    assert c.gates[0].controls == (Control(1, True),)


@pytest.mark.parametrize("lam", range(1, 6))
def test_controlled_f_vertices(lam):
    assert count(T.controlled_f_circuit(lam, 5)).control_vertex_count == 6 * lam - 5


def test_calF_vertices_quadratic():
    for Lam in range(1, 8):
        assert T.calF_vertices(Lam) == 3 * Lam ** 2 - 2 * Lam


def test_bbar_row_single_entry():
    spec = H.TreeSpec(5, d=(1.0, 2.0, 3.0, 4.0, 5.0))
    for s in range(16):
        row = T.bbar_row(s, T.minlam(s), spec)
        assert row.b == pytest.approx([spec.d_of(T.minlam(s))])
        chain = T.svd_chain(row)
        assert chain.thetas == () and chain.rho_final == pytest.approx(spec.d_of(T.minlam(s)))


def test_bbar_row_zero_below_minlam():
    spec = H.TreeSpec(4, g=0.2)
    row = T.bbar_row(5, 2, spec)
    assert row.is_zero
    with pytest.raises(ValueError):
        T.svd_chain(row)


def test_bbar_parity_all_rows():
    for Lam in range(1, 6):
        spec = H.TreeSpec(Lam, d=tuple(0.3 + 0.1 * k for k in range(Lam)))
        for s in range(2 ** (Lam - 1)):
            for lam in range(T.minlam(s), Lam + 1):
                assert T.bbar_row(s, lam, spec).parity_leak() <= 1e-12


def test_bbar_matches_block_formula():
    spec = H.TreeSpec(3, g=0.3)
    s, lam = 0, 3
    row = T.bbar_row(s, lam, spec)
    p = T.strand_path(s, lam, spec)
    b = np.zeros((1, len(p)))
    b[0, -1] = spec.d_of(lam)
    assert np.allclose(row.coeffs, (b @ M.sinc_exp_half(p))[0])


def test_two_entry_row_uniform_closed_form():
    g = 0.3
    spec = H.TreeSpec(3, g=g)
    x = g * np.sqrt(2)
    b = x * np.sinc(x / 2 / np.pi) * np.exp(1j * x / 2)
    row = T.bbar_row(0, 2, spec)
    assert row.coeffs == pytest.approx([1j * b.imag, b.real])


def test_svd_chain_closed_forms():
    br, bi = 0.31, 0.047
    coeffs = np.array([br, 1j * bi, br, 1j * bi, br])
    row = T.BbarRow(0, 5, (1, 2, 3, 4, 5), (1, 3, 7, 15, 31), coeffs)
    chain = T.svd_chain(row)
    th = dict(chain.thetas)
    r3 = abs(complex(br, bi))
    r7 = np.hypot(br, r3)
    r15 = np.hypot(bi, r7)
    r31 = np.hypot(br, r15)
    assert (np.cos(th[1]), np.sin(th[1])) == pytest.approx((bi / r3, -br / r3))
    assert (np.cos(th[2]), np.sin(th[2])) == pytest.approx((br / r7, r3 / r7))
    assert (np.cos(th[3]), np.sin(th[3])) == pytest.approx((bi / r15, -r7 / r15))
    assert (np.cos(th[4]), np.sin(th[4])) == pytest.approx((br / r31, r15 / r31))
    assert chain.rho_final == pytest.approx(r31)


def test_svd_chain_reconstructs(rng):
    Lam, s, lam = 4, 0, 4
    for _ in range(5):
        b = rng.normal(size=4)
        levels = (1, 2, 3, 4)
        pre = [1j if (lam - l) % 2 else 1 for l in levels]
        row = T.BbarRow(s, lam, levels, tuple(T.strand_node(s, l) for l in levels), np.array(pre) * b)
        chain = T.svd_chain(row)
        w = to_unitary(T.chain_circuit(chain, lam, Lam))
        r = T.strand_node(s, lam)
        assert np.allclose(chain.rho_final * w[r, :], row.vector(2 ** (Lam + 1)), atol=1e-10)


def test_gamma_matches_generator_everywhere():
    Lam = 5
    spec = H.TreeSpec(Lam, d=(0.3, 0.25, 0.2, 0.35, 0.15))
    for s in range(2 ** (Lam - 1)):
        for lam in range(1, Lam + 1):
            u = to_unitary(T.gamma_circuit(s, lam, Lam, spec=spec))
            assert M.dist(u, M.exp_i(T.gamma_generator(s, lam, Lam, spec))) <= 1e-9


def test_gamma_worked_gates():
    spec = H.TreeSpec(5, g=0.2)
    c = T.gamma_circuit(0, 1, 5, spec=spec)
    assert len(c.gates) == 1
    g = c.gates[0]
    assert (g.kind, g.target) == ("ROTX", 1)
    assert set(g.controls) == {Control(5, False), Control(4, False), Control(3, False),
                               Control(2, False), Control(0, True)}
    c = T.gamma_circuit(8, 5, 5, spec=spec)
    assert len(c.gates) == 1
    assert c.gates[0].target == 5
    assert set(c.gates[0].controls) == {Control(4, True), Control(3, False), Control(2, True),
                                        Control(1, True), Control(0, True)}


def test_gamma_vertex_formula():
    spec = H.TreeSpec(5, g=0.2)
    for s in range(16):
        for lam in range(T.minlam(s), 6):
            c = T.gamma_circuit(s, lam, 5, spec=spec)
            assert count(c).control_vertex_count == T.gamma_vertices(s, lam, 5)
        assert T.gamma_vertices(s, T.minlam(s), 5) == 5


def test_strands_commute():
    Lam = 4
    spec = H.TreeSpec(Lam, g=0.3)
    us = [to_unitary(T.strand_circuit(s, Lam, spec)) for s in range(2 ** (Lam - 1))]
    for a, b in itertools.combinations(us, 2):
        assert M.dist(a @ b, b @ a) <= 1e-10


def test_weave_top_class_single_gate():
    c = T.weave_class(3, 5, H.TreeSpec(5, g=0.2))
    assert len(c.gates) == 1
    assert set(c.gates[0].controls) == {Control(4, True), Control(3, False)}


@pytest.mark.parametrize("Lam,sigma", [(4, 0), (4, 1), (4, 2), (5, 2)])
def test_weave_preserves_product(Lam, sigma):
    spec = H.TreeSpec(Lam, g=0.25)
    prod = np.eye(2 ** (Lam + 1))
    unwoven = 0
    for s in T.class_strands(sigma):
        c = T.strand_circuit(s, Lam, spec)
        prod = to_unitary(c) @ prod
        unwoven += count(c).control_vertex_count
    woven = T.weave_class(sigma, Lam, spec)
    assert M.dist(to_unitary(woven), prod) <= 1e-9
    n = count(woven).control_vertex_count
    rep = 2 ** sigma
    assert n == sum(T.gamma_vertices(rep, l, Lam) - sigma for l in range(T.minlam(rep), Lam + 1))
    if sigma >= 1:
        assert n < unwoven


def test_weave_class_range():
    with pytest.raises(ValueError):
        T.weave_class(3, 4, H.TreeSpec(4, g=0.1))


def test_compile_tree_zero_is_identity():
    assert M.dist(to_unitary(T.compile_tree(H.TreeSpec(3, g=0.0))), np.eye(16)) <= 1e-12


def _tree_errs(variant, gs, Lam=3):
    return [verify(T.compile_tree(H.TreeSpec(Lam, g=g), variant), H.h_tree(H.TreeSpec(Lam, g=g))).distance
            for g in gs]


def test_tree_error_orders():
    e3 = _tree_errs("order3", [0.2, 0.1])
    e4 = _tree_errs("order4", [0.2, 0.1])
    assert 4 <= e3[0] / e3[1] <= 16
    assert 8 <= e4[0] / e4[1] <= 32


def test_tree_slope_stable():
    gs = [0.2, 0.1, 0.05]
    a = slope(gs, _tree_errs("order3", gs))
    b = slope(gs + [0.025], _tree_errs("order3", gs + [0.025]))
    assert abs(a - 3) <= 0.5 and abs(a - b) <= 0.2


def test_tree_explicit_d_order3():
    spec = H.TreeSpec(3, d=(0.1, 0.2, 0.15))
    half = H.TreeSpec(3, d=(0.05, 0.1, 0.075))
    r = verify(T.compile_tree(spec), H.h_tree(spec)).distance / verify(T.compile_tree(half), H.h_tree(half)).distance
    assert 4 <= r <= 16


def test_compile_tree_variants_checked():
    with pytest.raises(ValueError):
        T.compile_tree(H.TreeSpec(3, g=0.1), "order5")
    with pytest.raises(ValueError):
        T.compile_tree(H.TreeSpec(3, d=(0.1, 0.2, 0.3)), "order4")


@pytest.mark.parametrize("Lam", [2, 3, 4, 5])
def test_tree_vertex_count_matches(Lam):
    assert count(T.compile_tree(H.TreeSpec(Lam, g=0.1))).control_vertex_count == T.tree_vertex_count(Lam)


def test_tree_vertex_growth_polynomial():
    lams = np.arange(2, 7)
    counts = np.array([T.tree_vertex_count(int(l)) for l in lams], dtype=float)
    fit = np.polyfit(lams, counts, 4)
    assert np.allclose(np.polyval(fit, lams), counts)
    big = np.array([T.tree_vertex_count(l) for l in range(8, 20)], dtype=float)
    assert np.log(big[-1] / big[-4]) / np.log(19 / 16) < 4.5
