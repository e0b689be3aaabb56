# %% [markdown]
# # One walk step on the full graph
# Loop, tree, glue edge and oracle on a shared register, Trotterized
# with the second-order formula.  Doubling N_T cuts the error by ~4.

# %%
from nandwalk import hamlib as H
from nandwalk import harness as Hn
from nandwalk import suzuki as S

loop, tree = H.LoopSpec(3, 0.1), H.TreeSpec(2, g=0.1)
orc = H.OracleSpec(2, (1, 0, 1, 1), 0.1)
h = H.h_full(loop, tree, orc).h

prev = None
for nt in (1, 2, 4, 8):
    c = Hn.compile_walk_step(loop, tree, orc, S.SuzukiPlan(1, nt), "s2")
    d = Hn.verify(c, h, [c.num_qubits - 1]).distance
    print(f"N_T={nt}: error={d:.3e}" + ("" if prev is None else f" ratio={prev / d:.2f}"))
    prev = d

# %%
print("counts (cnots, vertices, gates):", Hn.walk_counts(loop, tree, orc, S.SuzukiPlan(1, 4)))
