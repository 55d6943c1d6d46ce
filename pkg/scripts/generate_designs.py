"""Find the symmetric 2-(15,7,3) designs by randomized backtracking.

Blocks are added one at a time, each meeting every earlier block in three
points.  Isomorphism
classes are separated by the canonical form of the colored incidence
graph, and every design found contributes its dual as well.  The run stops
once four classes other than the point-hyperplane design of PG(3, 2) have
been seen.

    python3 scripts/generate_designs.py [outdir] [--seed N]
"""

import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from srg4v.switching import SymmetricDesign, pg_hyperplane_design
from srg4v.symmetry import canonical_form

V, K, LAM = 15, 7, 3


def random_design(rng, cands, budget=20000):
    """Depth-first search over candidate lists filtered by intersection size.

    A square family of k-sets meeting pairwise in lambda points is already a
    symmetric design, so no pair counting is needed.
    """
    steps = [budget]

    def extend(chosen, pool):
        if len(chosen) == V:
            return chosen
        steps[0] -= 1
        if steps[0] < 0 or len(pool) < V - len(chosen):
            return None
        for i in range(len(pool)):
            b = pool[i]
            rest = pool[i + 1:]
            rest = rest[np.bitwise_count(rest & b) == LAM]
            out = extend(chosen + [int(b)], rest)
            if out is not None:
                return out
        return None

    pool = cands[rng.permutation(len(cands))]
    first = pool[0]
    found = extend([int(first)], pool[1:][np.bitwise_count(pool[1:] & first) == LAM])
    if found is None:
        return None
    return SymmetricDesign.from_blocks([[x for x in range(V) if b >> x & 1] for b in found], V)


def form(design):
    g, colors = design.incidence_graph()
    return canonical_form(g, colors)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir", nargs="?", default="data/designs")
    ap.add_argument("--seed", type=int, default=2)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    cands = np.array([sum(1 << x for x in c) for c in itertools.combinations(range(V), K)],
                     dtype=np.int64)
    classic = form(pg_hyperplane_design(4, 2))
    found = {}
    tries = 0
    while len(found) < 4 and tries < 5000:
        tries += 1
        d = random_design(rng, cands)
        if d is None:
            continue
        for e in (d, d.dual()):
            f = form(e)
            if f != classic:
                found.setdefault(f, e)
    if len(found) < 4:
        sys.exit(f"only {len(found)} classes after {tries} attempts")
    others = list(found.values())
    others.sort(key=lambda d: -d.automorphism_group().order)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for i, d in enumerate(others, 1):
        order = d.automorphism_group().order
        (out / f"design_15_7_3_{i}.txt").write_text(f"# |Aut| = {order}\n" + d.to_text())
        print(f"design_15_7_3_{i}.txt |Aut| = {order}, orbits {d.point_block_orbits()}")
    print(f"{tries} attempts")


if __name__ == "__main__":
    main()
