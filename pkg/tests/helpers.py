import numpy as np


def rand_herm(rng, n, scale=1.0):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = (m + m.conj().T) / 2
    return scale * h / np.linalg.norm(h, 2)


def rand_complex(rng, n, m=None, scale=1.0):
    m = n if m is None else m
    a = rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))
    return scale * a / np.linalg.norm(a, 2)


def slope(xs, ys):
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def controlled(u, n_ctrl_patterns, n, target):
    """Dense reference for a projector-controlled one-qubit gate (patterns: {qubit: bit})."""
    dim = 2 ** n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        hit = all(((col >> q) & 1) == b for q, b in n_ctrl_patterns.items())
        if not hit:
            out[col, col] = 1
            continue
        tb = (col >> target) & 1
        for nb in (0, 1):
            row = (col & ~(1 << target)) | (nb << target)
            out[row, col] = u[nb, tb]
    return out
