# %% [markdown]
# # Input oracle
# Leaves with x(b) = 1 are marked on an ancilla, a controlled rotation
# couples the leaf to its input node, and the marking is undone.
# Runs of ones ("bands") are marked with few multi-controlled NOTs.

# %%
from nandwalk import hamlib as H
from nandwalk import harness as Hn
from nandwalk import oraclecc as O

print(O.band_projectors(109, 8))
print(O.band_projectors(108, 8))

# %%
x = (0, 1, 1, 1, 1, 1, 1, 0)
spec = H.OracleSpec(3, x, 0.5)
bands = O.BandSpec.from_x(x, 3)
print("bands", bands.bands)
for label, b in (("minterms", None), ("bands", bands)):
    c = O.compile_oracle(spec, b)
    print(label, "MCNOTs", O.oracle_mcnots(spec, b),
          "distance %.1e" % Hn.verify(c, H.h_input(spec), [4]).distance)
