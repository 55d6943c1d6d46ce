"""Switching the collinearity graph of a polar space along a maximal t.i. subspace.

Given a maximal totally isotropic subspace U of a polar space, a symmetric
design D on the points of U with the parameters of the points and
hyperplanes of PG(d-1, q), and a bijection phi from the hyperplanes of U
to the blocks of D, the graph Gamma_phi keeps every adjacency of the
collinearity graph except between U and the rest: a point y outside U
becomes adjacent to the points of the block phi(y-perp meet U).

Points of U are numbered 0..m-1 in increasing order of their index in the
space ("local" indices); designs live on these numbers.  Hyperplanes of U
are ordered by their sorted point sets, and a permutation of hyperplanes is
written in one-line notation over that order.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .field import GF
from .geometry import FormedSpace, Subspace, projective_points
from .graph import Graph
from .perm import PERM_DTYPE, class_size, closure, cycle_type, inverse, mul


class DesignError(ValueError):
    pass


def gaussian_count(d: int, q: int) -> int:
    """(q^d - 1)/(q - 1), the number of points of PG(d-1, q)."""
    return (q**d - 1) // (q - 1)


# -- symmetric designs ----------------------------------------------------------------

@dataclass(frozen=True)
class SymmetricDesign:
    """A symmetric 2-(v, k, lambda) design; blocks are frozensets of points 0..v-1."""

    v: int
    k: int
    lam: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        self.validate()

    def validate(self):
        v, k, lam = self.v, self.k, self.lam
        if len(self.blocks) != v:
            raise DesignError(f"a symmetric design on {v} points needs {v} blocks, "
                              f"got {len(self.blocks)}")
        if len(set(self.blocks)) != len(self.blocks):
            raise DesignError("repeated block")
        for b in self.blocks:
            if len(b) != k:
                raise DesignError(f"block {sorted(b)} does not have size {k}")
            if not all(0 <= x < v for x in b):
                raise DesignError(f"block {sorted(b)} has points outside 0..{v - 1}")
        if lam * (v - 1) != k * (k - 1):
            raise DesignError(f"no symmetric 2-({v},{k},{lam}) design exists")
        N = self.incidence.astype(np.int64)
        cover = N.T @ N
        off = cover[~np.eye(v, dtype=bool)]
        if np.any(off != lam):
            bad = np.argwhere((cover != lam) & ~np.eye(v, dtype=bool))[0]
            raise DesignError(f"points {bad[0]} and {bad[1]} lie in {cover[bad[0], bad[1]]} "
                              f"blocks, not {lam}")

    @cached_property
    def incidence(self) -> np.ndarray:
        """Block-by-point incidence matrix."""
        N = np.zeros((len(self.blocks), self.v), dtype=bool)
        for i, b in enumerate(self.blocks):
            N[i, sorted(b)] = True
        return N

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], v: int | None = None) -> "SymmetricDesign":
        blocks = tuple(frozenset(int(x) for x in b) for b in blocks)
        if not blocks:
            raise DesignError("no blocks")
        v = len(blocks) if v is None else v
        k = len(blocks[0])
        lam, r = divmod(k * (k - 1), v - 1)
        if r:
            raise DesignError(f"no symmetric design with v={v}, k={k}")
        return cls(v, k, lam, blocks)

    @classmethod
    def parse(cls, text: str) -> "SymmetricDesign":
        """Read the text format: a header line "v k lambda", then one block per line."""
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise DesignError("empty design file")
        try:
            v, k, lam = (int(x) for x in lines[0].split())
            blocks = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
        except ValueError as exc:
            raise DesignError(f"malformed design file: {exc}") from None
        for b in blocks:
            if len(set(b)) != len(b):
                raise DesignError(f"block {b} repeats a point")
        return cls(v, k, lam, tuple(frozenset(b) for b in blocks))

    @classmethod
    def load(cls, path: str | Path) -> "SymmetricDesign":
        return cls.parse(Path(path).read_text())

    def to_text(self) -> str:
        out = [f"{self.v} {self.k} {self.lam}"]
        out += [" ".join(str(x) for x in sorted(b)) for b in self.blocks]
        return "\n".join(out) + "\n"

    def dual(self) -> "SymmetricDesign":
        """Blocks become points: block j of the dual holds the blocks through point j."""
        N = self.incidence
        return SymmetricDesign(self.v, self.k, self.lam,
                               tuple(frozenset(np.flatnonzero(N[:, j]).tolist())
                                     for j in range(self.v)))

    def incidence_graph(self) -> tuple[Graph, list[int]]:
        """Bipartite point-block graph (points first) and the side coloring."""
        v = self.v
        a = np.zeros((2 * v, 2 * v), dtype=bool)
        a[:v, v:] = self.incidence.T
        a[v:, :v] = self.incidence
        return Graph(a, validate=False), [0] * v + [1] * v

    def automorphism_group(self):
        """Automorphisms preserving points and blocks (via the incidence graph)."""
        from .symmetry import automorphism_group
        g, colors = self.incidence_graph()
        return automorphism_group(g, colors)

    def point_block_orbits(self) -> tuple[list[int], list[int]]:
        G = self.automorphism_group()
        pts = sorted(len(o) for o in G.vertex_orbits if o[0] < self.v)
        blks = sorted(len(o) for o in G.vertex_orbits if o[0] >= self.v)
        return pts, blks


def pg_hyperplane_design(d: int, q: int) -> SymmetricDesign:
    """Points and hyperplanes of PG(d-1, q), points in lexicographic order."""
    F = GF.of_order(q)
    pts = projective_points(q, d)
    blocks = []
    for c in projective_points(q, d):
        dot = np.zeros(len(pts), dtype=np.int64)
        for i in range(d):
            dot = F.add(dot, F.mul(pts[:, i], int(c[i])))
        blocks.append(frozenset(np.flatnonzero(dot == 0).tolist()))
    blocks.sort(key=sorted)
    return SymmetricDesign.from_blocks(blocks, len(pts))


# -- the switching context ------------------------------------------------------------

class SwitchingContext:
    """A polar space with a fixed maximal t.i. subspace U, precomputed for switching."""

    def __init__(self, space: FormedSpace, U: Subspace | None = None):
        self.space = space
        U = space.standard_maximal_subspace() if U is None else U
        if not space.is_totally_isotropic(U) or U.dim != space.witt_index:
            raise ValueError("U must be a maximal totally isotropic subspace")
        if U.dim < 3:
            raise ValueError("switching needs rank d >= 3")
        self.U = U
        self.d = U.dim
        self.q = space.field.q
        self.vertices = space.isotropic_points            # vertex i is point vertices[i]
        pos = {int(p): i for i, p in enumerate(self.vertices)}
        self.u_points = space.points_of(U)                 # local index -> point index
        self.u_vertices = np.array([pos[int(p)] for p in self.u_points], dtype=np.int64)
        self.m = len(self.u_points)
        in_u = np.zeros(len(self.vertices), dtype=bool)
        in_u[self.u_vertices] = True
        self.in_u = in_u
        self.outside = np.flatnonzero(~in_u)
        self.hyperplanes = space.hyperplanes_of(U)
        local = {int(p): i for i, p in enumerate(self.u_points)}
        self.hyperplane_sets = [frozenset(local[int(p)] for p in space.points_of(H))
                                for H in self.hyperplanes]
        self.hyperplane_design = SymmetricDesign.from_blocks(self.hyperplane_sets, self.m)
        self.base_adj = _polar_adj(space, self.vertices)
        # y-perp meet U for each outside vertex, as a hyperplane index
        meet = ~self.base_adj[np.ix_(self.outside, self.u_vertices)]
        np.logical_not(meet, out=meet)
        index = {frozenset(np.flatnonzero(r).tolist()): i for i, r in
                 enumerate(self.hyperplane_design.incidence)}
        hy = []
        for row in meet:
            key = frozenset(np.flatnonzero(row).tolist())
            if key not in index:
                raise ValueError("y-perp meet U is not a hyperplane; U is not maximal")
            hy.append(index[key])
        self.hyperplane_of = np.array(hy, dtype=np.int64)

    @classmethod
    def standard(cls, kind: str, d: int, q: int) -> "SwitchingContext":
        from .families import polar_space
        return cls(polar_space(kind, d, q))

    @property
    def n_hyperplanes(self) -> int:
        return len(self.hyperplanes)

    @cached_property
    def u_coords(self) -> np.ndarray:
        """Coordinates of the points of U in the RREF basis of U."""
        basis = np.array(self.U.basis)
        pivots = [int(np.flatnonzero(r)[0]) for r in basis]
        return self.space.points[self.u_points][:, pivots]

    @property
    def pointwise_stabilizer_order(self) -> int:
        """q^(d(d+1)/2) (q - 1)."""
        return self.q ** (self.d * (self.d + 1) // 2) * (self.q - 1)


def _polar_adj(space: FormedSpace, vertices: np.ndarray) -> np.ndarray:
    P = space.points[vertices]
    adj = space.bilinear(P, P) == 0
    np.fill_diagonal(adj, False)
    return adj


@dataclass(frozen=True)
class SwitchingPlan:
    """Everything Gamma_phi depends on: the context, a design and phi."""

    context: SwitchingContext
    design: SymmetricDesign
    phi: tuple[int, ...]

    def __post_init__(self):
        ctx = self.context
        if (self.design.v, self.design.k) != (ctx.m, gaussian_count(ctx.d - 1, ctx.q)):
            raise DesignError("design parameters do not match the hyperplanes of U")
        if sorted(self.phi) != list(range(ctx.n_hyperplanes)):
            raise ValueError("phi must be a bijection from hyperplanes to blocks")

    @classmethod
    def permutation(cls, context: SwitchingContext, phi: Sequence[int]) -> "SwitchingPlan":
        return cls(context, context.hyperplane_design, tuple(int(x) for x in phi))

    def to_json(self) -> dict:
        ctx = self.context
        design = "pg-hyperplanes" if self.design == ctx.hyperplane_design else \
            {"blocks": [sorted(b) for b in self.design.blocks]}
        return {"space": ctx.space.to_json(), "U": [int(p) for p in ctx.u_points],
                "design": design, "phi": list(self.phi)}

    @classmethod
    def from_json(cls, d: dict, base_dir: str | Path = ".") -> "SwitchingPlan":
        space = FormedSpace.from_json(d["space"])
        U = space.span_points(d["U"]) if d.get("U") is not None else None
        ctx = SwitchingContext(space, U)
        des = d.get("design", "pg-hyperplanes")
        if des == "pg-hyperplanes":
            design = ctx.hyperplane_design
        elif isinstance(des, dict) and "file" in des:
            design = SymmetricDesign.load(Path(base_dir) / des["file"])
        elif isinstance(des, dict) and "blocks" in des:
            design = SymmetricDesign.from_blocks(des["blocks"], ctx.m)
        else:
            raise ValueError(f"unknown design specification {des!r}")
        phi = d.get("phi") or list(range(ctx.n_hyperplanes))
        return cls(ctx, design, tuple(int(x) for x in phi))

    @classmethod
    def load(cls, path: str | Path) -> "SwitchingPlan":
        path = Path(path)
        return cls.from_json(json.loads(path.read_text()), path.parent)


def build_gamma_phi(plan: SwitchingPlan) -> Graph:
    """The switched graph; vertex i is the point ``plan.context.vertices[i]``."""
    ctx = plan.context
    adj = ctx.base_adj.copy()
    blocks = plan.design.incidence[np.asarray(plan.phi)]
    rows = blocks[ctx.hyperplane_of]                     # outside x local U points
    adj[np.ix_(ctx.outside, ctx.u_vertices)] = rows
    adj[np.ix_(ctx.u_vertices, ctx.outside)] = rows.T
    return Graph(adj, validate=False)


def wqh_swap(context: SwitchingContext, h1: int, h2: int, graph: Graph | None = None) -> Graph:
    """Interchange two hyperplanes of U in the adjacency (a WQH switch).

    Points y outside U with y-perp meet U equal to H1 (H2) are joined to the
    points of H2 (H1) instead.  Applied to ``graph`` (default: the
    collinearity graph).
    """
    if h1 == h2:
        raise ValueError("the two hyperplanes must differ")
    ctx = context
    adj = (ctx.base_adj if graph is None else graph.adj).copy()
    ya = ctx.outside[ctx.hyperplane_of == h1]
    yb = ctx.outside[ctx.hyperplane_of == h2]
    # all points of one class see U the same way, so swap the two patterns
    row_a = adj[ya[0], ctx.u_vertices].copy()
    row_b = adj[yb[0], ctx.u_vertices].copy()
    adj[np.ix_(ya, ctx.u_vertices)] = row_b
    adj[np.ix_(yb, ctx.u_vertices)] = row_a
    adj[np.ix_(ctx.u_vertices, ya)] = row_b[:, None]
    adj[np.ix_(ctx.u_vertices, yb)] = row_a[:, None]
    return Graph(adj, validate=False)


# -- emptying vertices ------------------------------------------------------------------

@dataclass(frozen=True)
class EmptyingReport:
    """Emptying data of a bijection phi.

    ``emptying[e]`` is True when the hyperplanes H with e in phi(H) have
    empty intersection; ``dually[f]`` when the blocks phi(H), f in H, do.
    ``correspondence`` maps each not dually emptying f to the point a with
    {a} = intersection of those blocks.
    """

    emptying: tuple[bool, ...]
    dually: tuple[bool, ...]
    is_emptying: bool
    is_dually_emptying: bool
    correspondence: dict[int, int] = field(default_factory=dict)


def emptying_analysis(plan: SwitchingPlan) -> EmptyingReport:
    ctx = plan.context
    H = ctx.hyperplane_design.incidence                  # hyperplane x point
    B = plan.design.incidence[np.asarray(plan.phi)]       # image block x point
    m = ctx.m
    emp, dual = [], []
    corr = {}
    for e in range(m):
        hs = np.flatnonzero(B[:, e])
        inter = np.all(H[hs], axis=0)
        emp.append(not inter.any())
    for f in range(m):
        hs = np.flatnonzero(H[:, f])
        inter = np.all(B[hs], axis=0)
        dual.append(not inter.any())
        if inter.any():
            pts = np.flatnonzero(inter)
            if len(pts) == 1:
                corr[f] = int(pts[0])
    coords = ctx.u_coords
    la = ctx.space.la

    def spans(flags):
        rows = [coords[i].tolist() for i in range(m) if flags[i]]
        return len(la.rref(rows)) == ctx.d if rows else False

    return EmptyingReport(tuple(emp), tuple(dual), spans(emp), spans(dual), corr)


# -- PGammaL on hyperplanes ---------------------------------------------------------------

@dataclass(frozen=True)
class PermGroupData:
    """A permutation group given by all its elements (small groups only)."""

    degree: int
    generators: tuple[tuple[int, ...], ...]
    elements: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def cycle_types(self) -> Counter:
        return Counter(cycle_type(g) for g in self.elements)

    @cached_property
    def _keys(self) -> set[bytes]:
        return {g.astype(PERM_DTYPE).tobytes() for g in self.elements}

    def __contains__(self, g) -> bool:
        return np.asarray(g, dtype=PERM_DTYPE).tobytes() in self._keys


PGL_LIMIT = 20_200


def _matrix_generators(F: GF, d: int) -> list[np.ndarray]:
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                M = np.eye(d, dtype=np.int64)
                M[i, j] = 1
                gens.append(M)
    D = np.eye(d, dtype=np.int64)
    D[0, 0] = F.eta
    gens.append(D)
    return gens


def _action_on_hyperplanes(F: GF, coords: np.ndarray, hyper_sets: list[frozenset[int]],
                           include_frobenius: bool = True) -> list[np.ndarray]:
    """Generators of PGammaL acting on the hyperplanes given as local point sets."""
    d = coords.shape[1]
    key = {tuple(r): i for i, r in enumerate(coords.tolist())}
    hidx = {h: i for i, h in enumerate(hyper_sets)}

    def normalize(X):
        nz = X != 0
        lead = X[np.arange(len(X)), nz.argmax(axis=1)]
        return F.mul(X, F.inv(lead)[:, None])

    def point_perm(images):
        return [key[tuple(r)] for r in normalize(images).tolist()]

    maps = []
    for M in _matrix_generators(F, d):
        img = np.zeros_like(coords)
        for j in range(d):
            acc = np.zeros(len(coords), dtype=np.int64)
            for i in range(d):
                acc = F.add(acc, F.mul(coords[:, i], int(M[i, j])))
            img[:, j] = acc
        maps.append(point_perm(img))
    if include_frobenius and F.k > 1:
        maps.append(point_perm(F.frobenius(coords)))
    gens = []
    for pm in maps:
        perm = [hidx[frozenset(pm[x] for x in h)] for h in hyper_sets]
        gens.append(np.array(perm, dtype=PERM_DTYPE))
    return gens


def pgl_on_hyperplanes(d: int, q: int, context: SwitchingContext | None = None,
                       limit: int = PGL_LIMIT) -> PermGroupData:
    """PGammaL(d, q) as a permutation group on the hyperplanes of U.

    Without a context the hyperplanes are those of PG(d-1, q) in the order
    of :func:`pg_hyperplane_design`.
    """
    F = GF.of_order(q)
    if context is None:
        coords = projective_points(q, d)
        hyper = list(pg_hyperplane_design(d, q).blocks)
    else:
        if (context.d, context.q) != (d, q):
            raise ValueError("context does not match (d, q)")
        coords = context.u_coords
        hyper = context.hyperplane_sets
    expected = _pgammal_order(d, q)
    if expected > limit:
        raise ValueError(f"|PGammaL({d},{q})| = {expected} exceeds the limit {limit}")
    gens = _action_on_hyperplanes(F, coords, hyper)
    elements = np.array(closure(gens, len(hyper), limit=limit), dtype=PERM_DTYPE)
    if len(elements) != expected:  # pragma: no cover
        raise AssertionError(f"closure has {len(elements)} elements, expected {expected}")
    return PermGroupData(len(hyper), tuple(tuple(int(x) for x in g) for g in gens), elements)


def _pgammal_order(d: int, q: int) -> int:
    from .field import prime_power
    _, e = prime_power(q)
    gl = math.prod(q**d - q**i for i in range(d))
    return gl // (q - 1) * e


# -- double cosets -------------------------------------------------------------------------

def _cycle_types(group) -> Counter:
    if isinstance(group, Counter):
        return group
    if isinstance(group, PermGroupData):
        return group.cycle_types
    return Counter(cycle_type(np.asarray(g)) for g in group)


def count_double_cosets(n: int, group, other=None) -> int:
    """Number of (G, K)-double cosets in Sym(n), by the class formula.

    ``group`` and ``other`` (default: the same group) are
    :class:`PermGroupData`, sequences of all group elements, or Counters of
    cycle types.  The count is (1/|G||K|) * sum over cycle types c of
    |G meet c| |K meet c| n! / |c|.
    """
    tg = _cycle_types(group)
    tk = tg if other is None else _cycle_types(other)
    for types in (tg, tk):
        if any(sum(c) != n for c in types):
            raise ValueError("group does not act on n points")
    total = sum(Fraction(cnt * tk.get(c, 0) * math.factorial(n), class_size(c))
                for c, cnt in tg.items())
    total /= sum(tg.values()) * sum(tk.values())
    if total.denominator != 1:  # pragma: no cover
        raise AssertionError("class formula gave a non-integer")
    return int(total)


def design_block_group(design: SymmetricDesign, limit: int = 100_000) -> PermGroupData:
    """Aut(D) acting on the blocks of D."""
    G = design.automorphism_group()
    v = design.v
    gens = [np.asarray(g[v:], dtype=PERM_DTYPE) - v for g in G.generators]
    elements = np.array(closure(gens, v, limit=limit), dtype=PERM_DTYPE)
    if len(elements) != G.order:  # pragma: no cover
        raise AssertionError("block action is not faithful")
    return PermGroupData(v, tuple(tuple(int(x) for x in g) for g in gens), elements)


def symmetric_group_types(n: int) -> Counter:
    """Cycle types of Sym(n) with their class sizes (Sym(n) as a 'group' argument)."""
    out = Counter()

    def parts(n, maxp):
        if n == 0:
            yield ()
            return
        for p in range(min(n, maxp), 0, -1):
            for rest in parts(n - p, p):
                yield (p,) + rest

    for c in parts(n, n):
        out[c] = class_size(c)
    return out


def enumerate_double_coset_reps(n: int, generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Lexicographically least representative of every (G, G)-double coset in Sym(n)."""
    if n > 8:
        raise ValueError("enumeration is limited to n <= 8")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    gens = [tuple(int(x) for x in g) for g in generators]
    seen = np.zeros(len(perms), dtype=bool)
    reps = []
    for i, p in enumerate(perms):
        if seen[i]:
            continue
        reps.append(p)
        seen[i] = True
        stack = [p]
        while stack:
            x = stack.pop()
            for g in gens:
                # x followed by g, and g followed by x
                for y in (tuple(g[x[t]] for t in range(n)), tuple(x[g[t]] for t in range(n))):
                    j = index[y]
                    if not seen[j]:
                        seen[j] = True
                        stack.append(y)
    return reps


def double_coset_labels(n: int, generators: Sequence[Sequence[int]]) -> dict[tuple[int, ...], int]:
    """Map each permutation of Sym(n) to the number of its double coset (n <= 8)."""
    reps = enumerate_double_coset_reps(n, generators)
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    label = np.full(len(perms), -1, dtype=np.int64)
    gens = [tuple(int(x) for x in g) for g in generators]
    for k, r in enumerate(reps):
        label[index[r]] = k
        stack = [r]
        while stack:
            x = stack.pop()
            for g in gens:
                for y in (tuple(g[x[t]] for t in range(n)), tuple(x[g[t]] for t in range(n))):
                    j = index[y]
                    if label[j] < 0:
                        label[j] = k
                        stack.append(y)
    return {p: int(label[i]) for i, p in enumerate(perms)}


def same_double_coset(group: PermGroupData, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether b is in G a G (explicit element list)."""
    a = np.asarray(a, dtype=PERM_DTYPE)
    target = np.asarray(b, dtype=PERM_DTYPE).tobytes()
    right = {mul(a, h).tobytes() for h in group.elements}
    for g in group.elements:
        # g a h = b  <=>  a h = g^-1 b
        if mul(inverse(g), np.frombuffer(target, dtype=PERM_DTYPE)).tobytes() in right:
            return True
    return False


# -- the clique characterization of U ----------------------------------------------------------

def lemma4_candidates(g: Graph, d: int, q: int, disjoint_count: int) -> list[frozenset[int]]:
    """Cliques of size m_d with the two graph properties that single out U.

    (i) every maximal clique of the graph on the complement has size
    m_d - m_i for some 0 <= i <= d-1; (ii) exactly ``disjoint_count``
    maximal cliques of size m_d avoid the clique.
    """
    import networkx as nx
    md = gaussian_count(d, q)
    allowed = {md - gaussian_count(i, q) for i in range(d)}
    G = g.to_networkx()
    big = [frozenset(c) for c in nx.find_cliques(G) if len(c) == md]
    out = []
    for E in big:
        rest = G.subgraph([x for x in range(g.v) if x not in E])
        if any(len(c) not in allowed for c in nx.find_cliques(rest)):
            continue
        if sum(1 for F in big if not (F & E)) != disjoint_count:
            continue
        out.append(E)
    return out


# -- sampling ---------------------------------------------------------------------------------

def random_permutations(n: int, count: int, seed: int = 0) -> list[tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    return [tuple(int(x) for x in rng.permutation(n)) for _ in range(count)]


def singer_normalizer_phis(context: SwitchingContext) -> list[tuple[int, ...]]:
    """The permutations of hyperplanes normalizing a Singer cycle of U.

    A Singer cycle s (multiplication by a primitive element of GF(q^d))
    permutes the hyperplanes in one long cycle H_0, H_1, ...; the maps
    H_i -> H_(a i + b) with a a unit mod m form its normalizer in Sym(H).
    """
    F = GF.of_order(context.q)
    d, m = context.d, context.n_hyperplanes
    if F.k != 1:
        raise ValueError("implemented for prime q")
    big = GF(F.p, d)
    # multiplication by the primitive element x of GF(p^d), on coefficient vectors
    M = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        M[i] = big.digits(big.mul(F.p**i, big.eta))
    key = {tuple(r): i for i, r in enumerate(context.u_coords.tolist())}
    coords = context.u_coords

    def normalize(X):
        nz = X != 0
        lead = X[np.arange(len(X)), nz.argmax(axis=1)]
        return F.mul(X, F.inv(lead)[:, None])

    img = (coords @ M) % F.p
    pt = [key[tuple(r)] for r in normalize(img).tolist()]
    hidx = {h: i for i, h in enumerate(context.hyperplane_sets)}
    s = [hidx[frozenset(pt[x] for x in h)] for h in context.hyperplane_sets]
    cyc = [0]
    while len(cyc) < m:
        cyc.append(s[cyc[-1]])
    if len(set(cyc)) != m:
        raise AssertionError("Singer map is not a single cycle on hyperplanes")
    pos = {h: i for i, h in enumerate(cyc)}
    out = []
    for a in range(1, m):
        if math.gcd(a, m) != 1:
            continue
        for b in range(m):
            phi = [0] * m
            for h in range(m):
                phi[h] = cyc[(a * pos[h] + b) % m]
            out.append(tuple(phi))
    return out


@dataclass(frozen=True)
class SampledClass:
    phi: tuple[int, ...]
    hits: int
    srg: tuple[int, int, int, int] | None
    four_vertex: bool
    aut_order: int
    ratio: int | None
    orbit_lengths: list[int]

    def to_json(self) -> dict:
        return {"phi": list(self.phi), "hits": self.hits, "srg": self.srg,
                "four_vertex": self.four_vertex, "aut_order": str(self.aut_order),
                "ratio": self.ratio, "orbit_lengths": self.orbit_lengths}


def sample_classes(context: SwitchingContext, phis: Iterable[Sequence[int]],
                   group: PermGroupData | None = None) -> list[SampledClass]:
    """Analyse one representative per double coset among ``phis``.

    Classes are separated by double-coset membership when ``group`` is given,
    otherwise by canonical form.  ``ratio`` is |Aut| / N with N the order of
    the pointwise stabilizer of U (None if N does not divide |Aut|).
    """
    from .graph import four_vertex_check
    from .symmetry import automorphism_group, canonical_form

    reps: list[list] = []          # [phi, hits, key]
    for phi in phis:
        phi = tuple(int(x) for x in phi)
        for rec in reps:
            if group is not None:
                same = same_double_coset(group, rec[0], phi)
            else:
                same = rec[2] == canonical_form(
                    build_gamma_phi(SwitchingPlan.permutation(context, phi)))
            if same:
                rec[1] += 1
                break
        else:
            key = None if group is not None else canonical_form(
                build_gamma_phi(SwitchingPlan.permutation(context, phi)))
            reps.append([phi, 1, key])
    out = []
    N = context.pointwise_stabilizer_order
    for phi, hits, _ in reps:
        g = build_gamma_phi(SwitchingPlan.permutation(context, phi))
        rep = four_vertex_check(g)
        A = automorphism_group(g)
        ratio = A.order // N if A.order % N == 0 else None
        out.append(SampledClass(phi, hits, rep.srg.tuple if rep.srg else None,
                                bool(rep.satisfied), A.order, ratio, A.orbit_lengths))
    return out
