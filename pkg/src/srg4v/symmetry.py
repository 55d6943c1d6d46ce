"""Automorphism groups, canonical forms and orbit structure of graphs.

The search follows the individualization-refinement scheme.  A node of the
search tree is an equitable ordered partition obtained by individualizing
a sequence of vertices and refining; its trace is an isomorphism invariant
hash of the refinement.  Two passes are made:

1. Along the first path to a leaf, every vertex of every target cell is
   either shown equivalent to the first-path choice (by finding an
   automorphism) or shown inequivalent (its subtree has no matching leaf).
   This yields generators of Aut(G) and its exact order as the product of
   the basic orbit lengths.
2. The canonical leaf is the one with the largest trace sequence and then
   the largest relabeled adjacency matrix.  Subtrees are pruned with the
   orbits of the pointwise stabilizer of the current sequence, taken from
   a stabilizer chain of the now fully known group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .graph import Graph, encode_graph6
from .perm import PERM_DTYPE, StabChain, orbits

MAX_VERTICES = 1500


@dataclass
class _Node:
    lab: np.ndarray
    inv: np.ndarray
    cstart: np.ndarray
    cend: np.ndarray
    ncells: int
    trace: int
    seq: tuple[int, ...] = ()

    @property
    def discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def target(self) -> np.ndarray:
        s = _kernels.target_cell(self.cend)
        return self.lab[s:self.cend[s]]


class _Tree:
    def __init__(self, g: Graph, colors: Sequence[int] | None = None):
        if g.v > MAX_VERTICES:
            raise ValueError(f"{g.v} vertices exceeds the limit of {MAX_VERTICES}")
        self.g = g
        self.v = v = g.v
        adj = g.adj
        self.indptr = np.zeros(v + 1, dtype=np.int64)
        self.indptr[1:] = np.cumsum(adj.sum(axis=1))
        self.indices = np.nonzero(adj)[1].astype(np.int64)
        self.rows = g.rows
        colors = np.zeros(v, dtype=np.int64) if colors is None else np.asarray(colors)
        if len(colors) != v:
            raise ValueError("one color per vertex is needed")
        self.colors = colors
        cells = _vertex_invariant(g, colors) if v else colors
        lab = np.argsort(cells, kind="stable").astype(np.int64)
        inv = np.empty(v, dtype=np.int64)
        inv[lab] = np.arange(v)
        cstart = np.zeros(v, dtype=np.int64)
        cend = np.zeros(v, dtype=np.int64)
        sc = cells[lab]
        starts = [0] + [i for i in range(1, v) if sc[i] != sc[i - 1]]
        bounds = starts + [v]
        for a, b in zip(bounds, bounds[1:]):
            cstart[a:b] = a
            cend[a] = b
        ncells = len(starts) if v else 0
        if v:
            h, ncells = _kernels.refine(self.indptr, self.indices, lab, inv, cstart, cend,
                                        ncells, np.array(starts, dtype=np.int64))
        else:
            h = 0
        self.root = _Node(lab, inv, cstart, cend, ncells, int(h))

    def child(self, node: _Node, w: int) -> _Node:
        lab, inv = node.lab.copy(), node.inv.copy()
        cstart, cend = node.cstart.copy(), node.cend.copy()
        pos = inv[w]
        s = cstart[pos]
        e = cend[s]
        other = lab[s]
        lab[s], lab[pos] = w, other
        inv[w], inv[other] = s, pos
        cend[s] = s + 1
        cend[s + 1] = e
        cstart[s + 1:e] = s + 1
        h, ncells = _kernels.refine(self.indptr, self.indices, lab, inv, cstart, cend,
                                    node.ncells + 1, np.array([s], dtype=np.int64))
        return _Node(lab, inv, cstart, cend, ncells, int(h), node.seq + (int(w),))

    def leaf_map(self, a: _Node, b: _Node) -> np.ndarray:
        """The bijection sending a.lab[p] to b.lab[p]."""
        perm = np.empty(self.v, dtype=PERM_DTYPE)
        perm[a.lab] = b.lab
        return perm

    def is_automorphism(self, perm: np.ndarray) -> bool:
        if not np.array_equal(self.colors[perm], self.colors):
            return False
        return bool(_kernels.is_automorphism_csr(self.indptr, self.indices,
                                                 perm.astype(np.int64), self.rows))

    def certificate(self, node: _Node) -> bytes:
        a = self.g.adj[np.ix_(node.lab, node.lab)]
        return np.packbits(a[np.triu_indices(self.v, 1)]).tobytes()


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def add_perm(self, g: np.ndarray):
        for x, y in enumerate(g.tolist()):
            rx, ry = self.find(x), self.find(y)
            if rx != ry:
                self.parent[max(rx, ry)] = min(rx, ry)

    def size_of(self, x: int) -> int:
        r = self.find(x)
        return sum(1 for y in range(len(self.parent)) if self.find(y) == r)


def _first_path(tree: _Tree) -> list[_Node]:
    path = [tree.root]
    while not path[-1].discrete:
        node = path[-1]
        path.append(tree.child(node, int(node.target()[0])))
    return path


def _vertex_invariant(g: Graph, colors: np.ndarray) -> np.ndarray:
    """Refinement of the coloring by an isomorphism invariant of each vertex.

    For a vertex x this is the multiset, over all y != x, of (x ~ y, number
    of edges on the common neighbourhood, least and largest degree there).
    Regular graphs, strongly regular ones above all, often have vertex orbits
    that equitable refinement alone cannot separate; this invariant does.
    """
    edges, lo, hi = _kernels.common_edge_counts(g.rows)
    code = (g.adj.astype(np.int64) << 60) | (edges.astype(np.int64) << 36) \
        | (lo.astype(np.int64) << 18) | hi.astype(np.int64)
    code = np.triu(code, 1)
    code = code + code.T
    np.fill_diagonal(code, -1)
    rows = np.sort(code, axis=1)
    rows = np.concatenate([np.asarray(colors, dtype=np.int64)[:, None], rows], axis=1)
    _, cls = np.unique(rows, axis=0, return_inverse=True)
    return cls.ravel()


class _Dive:
    """Search a subtree for a leaf equivalent to the first leaf.

    Leaves of the subtree that fail are compared with the first failing
    leaf; automorphisms found that way prune equivalent siblings.
    """

    def __init__(self, tree: _Tree, path: list[_Node], known: list[np.ndarray]):
        self.tree, self.path, self.known = tree, path, known
        self.local_first: _Node | None = None
        self.local: list[np.ndarray] = []

    def _orbit_map(self, seq: tuple[int, ...]) -> _UnionFind | None:
        gens = [g for g in self.known + self.local
                if all(g[x] == x for x in seq)]
        if not gens:
            return None
        uf = _UnionFind(self.tree.v)
        for g in gens:
            uf.add_perm(g)
        return uf

    def run(self, node: _Node, depth: int) -> np.ndarray | None:
        path, tree = self.path, self.tree
        if depth >= len(path) or node.trace != path[depth].trace \
                or node.ncells != path[depth].ncells:
            return None
        if node.discrete:
            perm = tree.leaf_map(path[-1], node)
            if tree.is_automorphism(perm):
                return perm
            if self.local_first is None:
                self.local_first = node
            else:
                other = tree.leaf_map(self.local_first, node)
                if tree.is_automorphism(other):
                    self.local.append(other)
            return None
        done: list[int] = []
        nlocal = -1
        uf = None
        for u in node.target().tolist():
            if len(self.local) != nlocal:
                nlocal = len(self.local)
                uf = self._orbit_map(node.seq)
            if uf is not None and any(uf.find(u) == uf.find(d) for d in done):
                continue
            found = self.run(tree.child(node, u), depth + 1)
            if found is not None:
                return found
            done.append(u)
        return None


@dataclass
class _Search:
    tree: _Tree
    path: list[_Node]
    generators: list[np.ndarray]
    basic_orbits: list[int]
    order: int
    chain: StabChain = field(repr=False)


def _automorphisms(tree: _Tree) -> _Search:
    path = _first_path(tree)
    gens: list[np.ndarray] = []
    uf = _UnionFind(tree.v)
    basic = [0] * (len(path) - 1)
    for i in reversed(range(len(path) - 1)):
        node = path[i]
        vi = path[i + 1].seq[-1]
        failed_roots: set[int] = set()
        for w in node.target().tolist():
            if w == vi or uf.find(w) == uf.find(vi):
                continue
            if uf.find(w) in failed_roots:
                continue
            g = _Dive(tree, path, gens).run(tree.child(node, w), i + 1)
            if g is None:
                failed_roots.add(uf.find(w))
            else:
                gens.append(g)
                uf.add_perm(g)
                failed_roots = {uf.find(r) for r in failed_roots}
        basic[i] = uf.size_of(vi)
    order = math.prod(basic)
    base = [n.seq[-1] for n in path[1:]]
    chain = StabChain.build(gens, tree.v, order=order, base=base)
    return _Search(tree, path, gens, basic, order, chain)


def _canonical_leaf(search: _Search) -> _Node:
    tree = search.tree
    best_traces: list[tuple[int, int]] = []
    best: list = [None, None]  # certificate, node
    rng = np.random.default_rng(12345)
    path_seqs = {n.seq: n for n in search.path}

    def chain_for_child(chain: StabChain, w: int) -> StabChain:
        if chain.order() == 1:
            return chain
        if chain.levels and chain.levels[0].base == w:
            return chain.stabilizer(1)
        fresh = StabChain.build([], tree.v, base=[w], source=chain, rng=rng)
        return fresh.stabilizer(1)

    def visit(node: _Node, depth: int, chain: StabChain):
        key = (node.trace, node.ncells)
        if depth < len(best_traces):
            if key < best_traces[depth]:
                return
            if key > best_traces[depth]:
                del best_traces[depth:]
                best_traces.append(key)
                best[0] = best[1] = None
        else:
            best_traces.append(key)
        if node.discrete:
            cert = tree.certificate(node)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, node
            return
        cell = node.target().tolist()
        gens = chain.strong_generators()
        if gens:
            uf = _UnionFind(tree.v)
            for g in gens:
                uf.add_perm(g)
            seen: set[int] = set()
            reps = []
            for w in cell:
                r = uf.find(w)
                if r not in seen:
                    seen.add(r)
                    reps.append(w)
        else:
            reps = cell
        for w in reps:
            seq = node.seq + (w,)
            child = path_seqs.get(seq) or tree.child(node, w)
            visit(child, depth + 1, chain_for_child(chain, w))

    visit(tree.root, 0, search.chain)
    return best[1]


# -- public interface ----------------------------------------------------------------

@dataclass(frozen=True)
class GroupDescription:
    """Automorphism group of a graph.

    ``order`` is exact.  ``pair_orbit_count`` is the number of orbits on
    ordered pairs of vertices, the rank when the group is transitive.
    """

    generators: tuple[tuple[int, ...], ...]
    order: int
    vertex_orbits: tuple[tuple[int, ...], ...]
    pair_orbit_count: int
    base: tuple[int, ...] = ()
    basic_orbits: tuple[int, ...] = ()

    @property
    def transitive(self) -> bool:
        return len(self.vertex_orbits) == 1

    @property
    def rank(self) -> int | None:
        return self.pair_orbit_count if self.transitive else None

    @property
    def orbit_lengths(self) -> list[int]:
        return sorted(len(o) for o in self.vertex_orbits)

    def to_json(self) -> dict:
        return {"order": str(self.order), "orbit_lengths": self.orbit_lengths,
                "rank": self.rank, "generators": [list(g) for g in self.generators]}


def _pair_orbits(search: _Search, vorbits: list[list[int]]) -> int:
    total = 0
    rng = np.random.default_rng(7)
    for orb in vorbits:
        x = orb[0]
        if search.chain.levels and search.chain.levels[0].base == x:
            stab = search.chain.stabilizer(1)
        elif search.order == 1:
            stab = search.chain
        else:
            stab = StabChain.build([], search.tree.v, base=[x], source=search.chain,
                                   rng=rng).stabilizer(1)
        total += len(orbits(stab.strong_generators(), search.tree.v))
    return total


def automorphism_group(g: Graph, colors: Sequence[int] | None = None) -> GroupDescription:
    """Generators, exact order and orbit data of Aut(g) (color-preserving if colors given)."""
    search = _automorphisms(_Tree(g, colors))
    for gen in search.generators:
        if not search.tree.is_automorphism(gen):  # pragma: no cover
            raise AssertionError("search produced a non-automorphism")
    vorbits = orbits(search.generators, g.v)
    return GroupDescription(
        generators=tuple(tuple(int(x) for x in gen) for gen in search.generators),
        order=search.order,
        vertex_orbits=tuple(tuple(o) for o in vorbits),
        pair_orbit_count=_pair_orbits(search, vorbits),
        base=tuple(int(b) for b in search.chain.base),
        basic_orbits=tuple(search.basic_orbits),
    )


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None) -> np.ndarray:
    """Permutation sending each vertex to its canonical position."""
    search = _automorphisms(_Tree(g, colors))
    leaf = _canonical_leaf(search)
    return leaf.inv.astype(np.int64).copy()


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> bytes:
    """Certificate that is equal for two graphs exactly when they are isomorphic."""
    perm = canonical_labeling(g, colors)
    out = encode_graph6(g.relabel(perm))
    if colors is not None:
        c = np.empty(g.v, dtype=np.int64)
        c[perm] = np.asarray(colors)
        out = b",".join(str(x).encode() for x in c.tolist()) + b";" + out
    return out


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.v == h.v and g.num_edges == h.num_edges and canonical_form(g) == canonical_form(h)


def rank_of(g: Graph) -> int | None:
    return automorphism_group(g).rank


def orbit_lengths(g: Graph) -> list[int]:
    return automorphism_group(g).orbit_lengths
