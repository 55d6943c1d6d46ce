# %% [markdown]
# # Rank 4 families and the 4-vertex condition
#
# Each graph below is strongly regular without being rank 3, and
# still satisfies the 4-vertex condition.  alpha and beta are the
# edge counts inside the common neighbourhood of an adjacent and a
# nonadjacent pair.

# %%
import time

from srg4v import four_vertex_check
from srg4v import families as fam
from srg4v.cli import cyclotomic_field


def show(name, g):
    t = time.perf_counter()
    rep = four_vertex_check(g)
    dt = time.perf_counter() - t
    print(f"{name:22s} SRG{rep.srg.tuple}  4VC={rep.satisfied}  "
          f"alpha={rep.alpha} beta={rep.beta}  lambda'={rep.lambda_prime} "
          f"mu'={rep.mu_prime}  [{dt:.2f}s]")


# %%
show("NO5-(5)", fam.no_graph(2, 5, -1))
show("NO5+(5)", fam.no_graph(2, 5, 1))

# %% [markdown]
# NO5+(5) has irregular lambda-graphs, so its alpha is not lambda * lambda' / 2.

# %%
show("hyperoval q=8", fam.hyperoval_graph(8))
show("disjoint planes q=2", fam.sp6_disjoint_planes_graph(2))
show("disjoint planes q=3", fam.sp6_disjoint_planes_graph(3))

# %%
F = cyclotomic_field(1849)
r = fam.cyclotomic_report(F, 4, (0,))
print("cyclotomic q=1849 e=4:", r.srg.tuple, r.fourvc.alpha, r.fourvc.beta)

# %% [markdown]
# Binary graphs: Gamma^(4), its two subconstituents, and Sigma^(4).

# %%
from srg4v import subconstituent

g = fam.ivanov_gamma(4)
show("Gamma(4)", g)
show("first subconstituent", subconstituent(g, 0, "first"))
show("second subconstituent", subconstituent(g, 0, "second"))
show("Sigma(4)", fam.ivanov_sigma(4))
show("T(4)", fam.ivanov_tee(4))
show("Upsilon(4)", fam.ivanov_upsilon(4))
