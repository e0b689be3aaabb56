"""Dense complex linear algebra for Hamiltonians and their exponentials.

Every matrix function here goes through a Hermitian eigendecomposition, so
the generators must be Hermitian.  Evolution is always ``exp(iH)``.
"""

from __future__ import annotations

import numpy as np

HERM_TOL = 1e-10
SERIES_CUT = 1e-8


def as_cmatrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def asymmetry(h) -> float:
    h = as_cmatrix(h)
    return float(np.max(np.abs(h - h.conj().T)))


def is_hermitian(h, tol: float = HERM_TOL) -> bool:
    return asymmetry(h) <= tol


def is_unitary(u, tol: float = HERM_TOL) -> bool:
    u = as_cmatrix(u)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(len(u))))) <= tol


def _check_herm(h, tol=HERM_TOL) -> np.ndarray:
    h = as_cmatrix(h)
    gap = asymmetry(h)
    if gap > tol:
        raise ValueError(f"matrix is not Hermitian (max |H - H^dag| = {gap:.3e})")
    return 0.5 * (h + h.conj().T)


def dist(a, b) -> float:
    """Frobenius distance."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def herm_eig(h):
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    Each eigenvector is phase-fixed so its first nonzero entry is real and
    positive, which makes the output deterministic.
    """
    h = _check_herm(h)
    w, v = np.linalg.eigh(h)
    for j in range(v.shape[1]):
        col = v[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12)
        if nz.size:
            p = col[nz[0]]
            v[:, j] = col * (abs(p) / p)
    return w, v


def func_herm(h, f) -> np.ndarray:
    """Apply the scalar function ``f`` to a Hermitian matrix."""
    w, v = herm_eig(h)
    return (v * f(w)) @ v.conj().T


def exp_i(h) -> np.ndarray:
    return func_herm(h, lambda w: np.exp(1j * w))


def _sin_sqrt_over_sqrt(x):
    # sin(sqrt x)/sqrt x for x >= 0, continued to 1 at x = 0
    x = np.clip(np.real(x), 0.0, None)
    out = np.empty_like(x)
    small = x < SERIES_CUT
    out[small] = 1.0 - x[small] / 6.0
    r = np.sqrt(x[~small])
    out[~small] = np.sin(r) / r
    return out


def _cos_sqrt(x):
    return np.cos(np.sqrt(np.clip(np.real(x), 0.0, None)))


def anti_block(f) -> np.ndarray:
    """The Hermitian matrix [[0, F^dag], [F, 0]]."""
    f = as_cmatrix(f)
    n = len(f)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, n:] = f.conj().T
    out[n:, :n] = f
    return out


def diag_block(a, n_lower: int | None = None) -> np.ndarray:
    """The matrix [[A, 0], [0, 0]]."""
    a = as_cmatrix(a)
    n = len(a)
    m = n if n_lower is None else n_lower
    out = np.zeros((n + m, n + m), dtype=complex)
    out[:n, :n] = a
    return out


def exp_anti_block(f) -> np.ndarray:
    """Closed form for exp(i [[0, F^dag], [F, 0]]) without an SVD."""
    f = as_cmatrix(f)
    n = len(f)
    fdf = f.conj().T @ f
    ffd = f @ f.conj().T
    out = np.empty((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = func_herm(fdf, _cos_sqrt)
    out[:n, n:] = 1j * func_herm(fdf, _sin_sqrt_over_sqrt) @ f.conj().T
    out[n:, :n] = 1j * func_herm(ffd, _sin_sqrt_over_sqrt) @ f
    out[n:, n:] = func_herm(ffd, _cos_sqrt)
    return out


def exp_anti_block_svd(f) -> np.ndarray:
    """Same exponential assembled from an SVD F = V diag(delta) U^dag."""
    f = as_cmatrix(f)
    n = len(f)
    v, delta, uh = np.linalg.svd(f)
    u = uh.conj().T
    z = np.zeros((n, n), dtype=complex)
    outer = np.block([[u, z], [z, v]])
    c = np.diag(np.cos(delta))
    s = np.diag(1j * np.sin(delta))
    return outer @ np.block([[c, s], [s, c]]) @ outer.conj().T


def _phi1(a):
    # (e^{ia} - 1)/(ia), continued to 1 at a = 0
    a = np.asarray(a, dtype=float)
    out = np.empty(a.shape, dtype=complex)
    small = np.abs(a) < SERIES_CUT
    s = a[small]
    out[small] = 1.0 + 0.5j * s - s * s / 6.0
    b = a[~small]
    out[~small] = (np.exp(1j * b) - 1.0) / (1j * b)
    return out


def sinc_exp_half(a) -> np.ndarray:
    """sinc(A/2) exp(iA/2), i.e. the integral of exp(itA) over t in [0, 1]."""
    return func_herm(a, _phi1)


def bbar(a, b) -> np.ndarray:
    return as_cmatrix(b) @ sinc_exp_half(a)


def time_ordered_check(a, b, n_steps: int) -> np.ndarray:
    """Discretized product that converges to exp(i [[A, B^dag], [B, 0]]).

    exp(i diag(A, 0)) times the ordered product over j = N..1 of
    exp(i dt anti_block(B exp(i t_j A))), with t_j = j dt.
    """
    a = _check_herm(a)
    b = as_cmatrix(b)
    if a.shape != b.shape:
        raise ValueError(f"A is {a.shape} but B is {b.shape}")
    if n_steps < 1:
        raise ValueError("need at least one step")
    dt = 1.0 / n_steps
    w, v = herm_eig(a)
    out = exp_i(diag_block(a))
    for j in range(n_steps, 0, -1):
        eta = (v * np.exp(1j * j * dt * w)) @ v.conj().T
        out = out @ exp_anti_block(dt * (b @ eta))
    return out


def lemma3_generator(a, b) -> np.ndarray:
    """Hermitian H with exp(iH) equal to the second factor of the g^5 split."""
    a = _check_herm(a)
    b = as_cmatrix(b)
    bdb = b.conj().T @ b
    t1 = (1j / 12) * (bdb @ a + a @ bdb)
    t2 = (1.0 / 24) * (-bdb @ a @ a + a @ a @ bdb)
    bb = bbar(a, b)
    n = len(a)
    k = np.empty((2 * n, 2 * n), dtype=complex)
    k[:n, :n] = t1 + t2
    k[:n, n:] = 1j * bb.conj().T
    k[n:, :n] = 1j * bb
    k[n:, n:] = -1j * (b @ a @ b.conj().T) / 6.0
    return -1j * k


def exp_block_o5(a, b) -> np.ndarray:
    """Two-factor approximation of exp(i [[A, B^dag], [B, 0]]), error O(g^5)."""
    a = _check_herm(a)
    return exp_i(diag_block(a)) @ exp_i(lemma3_generator(a, b))


def exp_block_o3(a, b) -> np.ndarray:
    """Lowest-order split exp(i diag(A, 0)) exp(i anti_block(bbar)), error O(g^3)."""
    a = _check_herm(a)
    return exp_i(diag_block(a)) @ exp_anti_block(bbar(a, b))


def full_block(a, b) -> np.ndarray:
    a = as_cmatrix(a)
    return diag_block(a) + anti_block(b)
