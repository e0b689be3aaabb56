# %% [markdown]
# # Product formulas
# Suzuki coefficients, exponential counts, and the error of the
# second-order formula as the slice count doubles.

# %%
import numpy as np

from nandwalk import matcore as M
from nandwalk import suzuki as S

print("a_coeff(1) =", round(S.a_coeff(1), 4))
print("exponentials per slice:", [S.nexp(k, 1) for k in (1, 2, 3)])

# %%
rng = np.random.default_rng(1)


def herm(n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


a, b = herm(8), herm(8)
ref = M.exp_i(a + b)
prev = None
for n in (2, 4, 8, 16):
    err = M.dist(S.product_matrix("s2", 1.0, n, lambda s: M.exp_i(s * a), lambda s: M.exp_i(s * b)), ref)
    print(f"N_T={n:<3} error={err:.3e}" + ("" if prev is None else f"  ratio={prev / err:.2f}"))
    prev = err
