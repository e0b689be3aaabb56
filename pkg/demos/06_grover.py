# %% [markdown]
# # Grover search
# The oracle reflection and the diffusion operator, their fractional
# powers, and a few rounds of amplitude amplification.

# %%
import numpy as np

from nandwalk import grovercc as G
from nandwalk import harness as Hn
from nandwalk.circuit import to_unitary

spec = G.GroverSpec(3, (1, 0, 1))
uc = Hn.restrict(to_unitary(G.compile_u_corr(spec)), 4, [3])
ub = Hn.restrict(to_unitary(G.compile_u_bulk(spec)), 4, [3])

# %%
psi = np.full(8, 1 / np.sqrt(8), dtype=complex)
for it in range(1, 4):
    psi = ub @ (uc @ psi)
    print(f"iteration {it}: P(target) = {abs(psi[spec.target]) ** 2:.3f}")

# %%
half = G.GroverSpec(3, (1, 0, 1), delta=0.5)
print("fractional corr", Hn.verify(G.compile_u_corr(half), G.h_grover_corr(half), [3]).distance)
print("fractional bulk", Hn.verify(G.compile_u_bulk(half), G.h_grover_bulk(half), [3]).distance)
