# %% [markdown]
# # Block exponentials
# The basic move of the compiler: exponentiate a Hermitian matrix that is
# off-diagonal in blocks, and check the result against a dense eigensolver.

# %%
import numpy as np

from nandwalk import matcore as M

rng = np.random.default_rng(0)
f = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))

# %%
# exact: the SVD of f gives the exponential in closed form
exact = M.exp_anti_block(f)
print("anti-block vs eigh:", M.dist(exact, M.exp_i(M.anti_block(f))))

# %%
# with a diagonal block added the splitting is no longer exact;
# the third and fifth order variants shrink as g^3 and g^5
a = rng.normal(size=(3, 3))
a = a + a.T
b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
for g in (0.2, 0.1, 0.05):
    ref = M.exp_i(M.full_block(g * a, g * b))
    print(f"g={g:<5} o3={M.dist(M.exp_block_o3(g * a, g * b), ref):.2e}"
          f"  o5={M.dist(M.exp_block_o5(g * a, g * b), ref):.2e}")
