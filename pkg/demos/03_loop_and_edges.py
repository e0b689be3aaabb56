# %% [markdown]
# # Loops, edges and lines
# Loop and single-edge evolutions compile exactly; the line needs a
# product formula because its even and odd edges do not commute.

# %%
from nandwalk import hamlib as H
from nandwalk import harness as Hn
from nandwalk import loopline as L
from nandwalk.circuit import count

spec = H.LoopSpec(3, 0.4)
c = L.compile_loop(spec)
print("loop nb=3:", count(c), "distance", Hn.verify(c, H.h_loop(spec), [3]).distance)

# %%
e = L.EdgeSpec(2, 5, 0.7, "glue", 3)
c = L.compile_edge(e)
print("edge 2-5:", count(c), "distance", Hn.verify(c, H.h_edge(2, 5, e.coupling, 3)).distance)

# %%
for order in ("lie1", "s2", "s4"):
    errs = [Hn.verify(L.compile_line(H.LineSpec(3, g), order), H.h_line(H.LineSpec(3, g))).distance
            for g in (0.2, 0.1, 0.05)]
    print(order, ["%.2e" % d for d in errs], "slope %.2f" % Hn.fit_slope([0.2, 0.1, 0.05], errs))
