# %% [markdown]
# # Switching in Sp6(2)
#
# U is a maximal totally isotropic plane with 7 points and 7
# hyperplanes (lines).  A permutation phi of the lines rewires the
# edges between U and the other 56 points.  Up to isomorphism the
# result depends only on the double coset PGL(3,2) phi PGL(3,2).

# %%
import itertools
from collections import Counter

from srg4v import (SwitchingContext, SwitchingPlan, automorphism_group, build_gamma_phi,
                   canonical_form, count_double_cosets, enumerate_double_coset_reps,
                   four_vertex_check, pgl_on_hyperplanes)

ctx = SwitchingContext.standard("sp", 3, 2)
G = pgl_on_hyperplanes(3, 2, ctx)
print("U has", ctx.m, "points; group on lines of order", G.order)
print("double cosets:", count_double_cosets(7, G))

# %%
reps = enumerate_double_coset_reps(7, G.generators)
for phi in reps:
    g = build_gamma_phi(SwitchingPlan.permutation(ctx, phi))
    rep = four_vertex_check(g)
    A = automorphism_group(g)
    print(phi, rep.srg.tuple, (rep.alpha, rep.beta), "|Aut| =", A.order,
          "orbits", A.orbit_lengths)

# %% [markdown]
# The four representatives give four distinct canonical forms.  A few
# hundred random bijections land in the same four classes.

# %%
forms = {canonical_form(build_gamma_phi(SwitchingPlan.permutation(ctx, phi))): i
         for i, phi in enumerate(reps)}
hits = Counter()
for phi in itertools.islice(itertools.permutations(range(7)), 0, 5040, 17):
    hits[forms[canonical_form(build_gamma_phi(SwitchingPlan.permutation(ctx, phi)))]] += 1
print("class sizes in the sample:", dict(sorted(hits.items())))
