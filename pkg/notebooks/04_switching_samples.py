# %% [markdown]
# # Sampling larger switching classes
#
# For 13 or 15 hyperplanes there are far too many bijections to try
# them all.  Permutations that normalize a Singer cycle of U are a good
# place to look for graphs with extra symmetry; random ones almost
# always give |Aut| equal to the pointwise stabilizer N of U.

# %%
import time

from srg4v import SwitchingContext, count_double_cosets, pgl_on_hyperplanes
from srg4v.switching import random_permutations, sample_classes, singer_normalizer_phis

for kind, d, q in [("o", 3, 3), ("sp", 3, 3), ("sp", 4, 2)]:
    t = time.perf_counter()
    ctx = SwitchingContext.standard(kind, d, q)
    G = pgl_on_hyperplanes(d, q, ctx)
    phis = singer_normalizer_phis(ctx) + random_permutations(ctx.n_hyperplanes, 4, seed=1)
    print(f"\n{kind} d={d} q={q}: N = {ctx.pointwise_stabilizer_order}, "
          f"{count_double_cosets(ctx.n_hyperplanes, G)} double cosets")
    for c in sample_classes(ctx, phis, G):
        print(f"  hits={c.hits:3d} 4VC={c.four_vertex!s:5s} |Aut|/N={c.ratio} "
              f"orbits={c.orbit_lengths if len(c.orbit_lengths) < 6 else '...'}")
    print(f"  [{time.perf_counter() - t:.0f}s]")
