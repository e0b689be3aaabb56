# %% [markdown]
# # Binary-tree evolution
# The tree is split into strands; each strand becomes a chain of
# rotations, and strands of one class are woven into a single circuit.

# %%
from nandwalk import hamlib as H
from nandwalk import harness as Hn
from nandwalk import treecc as T
from nandwalk.circuit import count

for s in range(8):
    print(f"strand {s}: minlam={T.minlam(s)} nodes at depth 4 = {T.strand_nodes(s, 4)}")

# %%
gs = [0.2, 0.1, 0.05]
for variant in ("order3", "order4"):
    errs = [Hn.verify(T.compile_tree(H.TreeSpec(3, g=g), variant), H.h_tree(H.TreeSpec(3, g=g))).distance
            for g in gs]
    print(variant, "slope %.2f" % Hn.fit_slope(gs, errs))

# %%
# vertex count: the closed form agrees with the compiled circuit
for Lam in range(2, 6):
    c = T.compile_tree(H.TreeSpec(Lam, g=0.1))
    print(Lam, T.tree_vertex_count(Lam), count(c).control_vertex_count)
