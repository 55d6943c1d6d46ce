# %% [markdown]
# # Finite fields and polar spaces
#
# Build a few fields, check the tables, and look at the collinearity
# graphs of some small polar spaces.

# %%
import numpy as np

from srg4v import GF, check_srg
from srg4v import families as fam

# %%
F = GF(2, 3)
print(F, "primitive element", F.eta)
print("multiplication table of GF(8):")
print(F.mul_table)

# %%
# every nonzero element is a power of the primitive element
powers = [int(F.exp[i]) for i in range(F.q - 1)]
assert sorted(powers) == list(range(1, F.q))

# %% [markdown]
# Polar spaces: points are the isotropic (or singular) projective points,
# two points are adjacent when they are orthogonal.

# %%
for kind, d, q in [("sp", 3, 2), ("sp", 3, 3), ("o", 3, 3), ("o-", 3, 2), ("o+", 4, 2)]:
    S = fam.polar_space(kind, d, q)
    g = fam.polar_collinearity_graph(S)
    print(f"{kind:3s} d={d} q={q}: {len(S.isotropic_points):4d} points, SRG{check_srg(g).tuple}")

# %%
S = fam.polar_space("sp", 3, 2)
U = S.totally_isotropic_subspaces(3)
print(len(U), "maximal totally isotropic planes in Sp6(2)")
print("points of the first one:", np.asarray(S.points_of(U[0])).tolist())
