"""Simple graphs and their strong-regularity analysis.

The central check is the 4-vertex condition in Sims' form: a strongly
regular graph satisfies it exactly when the number of edges induced on the
common neighbourhood of a pair x, y depends only on whether x ~ y.  The
counting runs over bit-packed adjacency rows (see ``_kernels``).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numba
import numpy as np

from . import _kernels


class NotStronglyRegular(ValueError):
    pass


class Graph:
    """Immutable simple graph on vertices 0..v-1 with a boolean adjacency matrix."""

    def __init__(self, adj, validate: bool = True):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if validate:
            if np.any(np.diagonal(a)):
                raise ValueError("graph has loops")
            if not np.array_equal(a, a.T):
                raise ValueError("adjacency matrix is not symmetric")
        a.flags.writeable = False
        self.adj = a

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((v, v), dtype=bool)
        for x, y in edges:
            if x == y:
                raise ValueError("graph has loops")
            a[x, y] = a[y, x] = True
        return cls(a, validate=False)

    @property
    def v(self) -> int:
        return self.adj.shape[0]

    def __len__(self):
        return self.v

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    @property
    def num_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    @cached_property
    def rows(self) -> np.ndarray:
        """Bit-packed adjacency rows (uint64 words, little-endian bit order)."""
        return _kernels.pack_rows(self.adj)

    @cached_property
    def _f32(self) -> np.ndarray:
        return self.adj.astype(np.float32)

    def common_counts(self) -> np.ndarray:
        """Matrix of common-neighbour counts (exact; computed in float32 BLAS)."""
        a = self._f32
        return np.rint(a @ a).astype(np.int64)

    def neighbors(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.adj[x])

    def induced(self, vertices) -> "Graph":
        vs = np.asarray(vertices, dtype=np.int64)
        return Graph(self.adj[np.ix_(vs, vs)], validate=False)

    def relabel(self, perm) -> "Graph":
        """Graph with vertex i renamed to perm[i]."""
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return Graph(self.adj[np.ix_(inv, inv)], validate=False)

    def complement(self) -> "Graph":
        a = ~self.adj
        np.fill_diagonal(a, False)
        return Graph(a, validate=False)

    def is_automorphism(self, perm) -> bool:
        perm = np.asarray(perm)
        return bool(np.array_equal(self.adj[np.ix_(perm, perm)], self.adj))

    def __eq__(self, other):
        return isinstance(other, Graph) and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash(self.adj.tobytes())

    def __repr__(self):
        return f"Graph(v={self.v}, edges={self.num_edges})"

    def to_graph6(self) -> bytes:
        return encode_graph6(self)

    @classmethod
    def from_graph6(cls, data: bytes | str) -> "Graph":
        return decode_graph6(data)

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(self.v))
        g.add_edges_from(zip(*np.nonzero(np.triu(self.adj, 1))))
        return g


def complement(g: Graph) -> Graph:
    return g.complement()


# -- strongly regular parameters -------------------------------------------------

@dataclass(frozen=True)
class SrgParams:
    """Parameters (v, k, lambda, mu) with the restricted eigenvalues.

    ``r2``/``s2`` are the doubled eigenvalues 2r > 2s when these are
    rational (then r, s are integers); for conference parameters with
    irrational eigenvalues they are None and ``disc`` carries the
    discriminant, r, s = ((lam - mu) +- sqrt(disc)) / 2.
    ``f`` and ``g`` are the multiplicities of r and s.
    """

    v: int
    k: int
    lam: int
    mu: int
    disc: int = field(default=0, compare=False)
    r2: int | None = field(default=None, compare=False)
    s2: int | None = field(default=None, compare=False)
    f: int | Fraction | None = field(default=None, compare=False)
    g: int | Fraction | None = field(default=None, compare=False)

    @classmethod
    def of(cls, v: int, k: int, lam: int, mu: int) -> "SrgParams":
        disc = (lam - mu) ** 2 + 4 * (k - mu)
        root = math.isqrt(disc)
        num = 2 * k + (v - 1) * (lam - mu)
        if root * root == disc:
            r2, s2 = lam - mu + root, lam - mu - root
            f = Fraction(v - 1, 2) - Fraction(num, 2 * root)
            g = Fraction(v - 1, 2) + Fraction(num, 2 * root)
        else:
            r2 = s2 = None
            f = g = Fraction(v - 1, 2) if num == 0 else None
        if f is not None and f.denominator == 1:
            f, g = int(f), int(g)
        return cls(v, k, lam, mu, disc, r2, s2, f, g)

    @property
    def tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    @property
    def r(self):
        return None if self.r2 is None else Fraction(self.r2, 2)

    @property
    def s(self):
        return None if self.s2 is None else Fraction(self.s2, 2)

    @property
    def integral_multiplicities(self) -> bool:
        return isinstance(self.f, int) and isinstance(self.g, int) and self.f >= 0 and self.g >= 0

    def identities_hold(self) -> bool:
        ok = self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu
        if self.f is not None:
            ok &= self.f + self.g == self.v - 1
        if self.r2 is not None and self.f is not None:
            ok &= 2 * self.k + self.f * self.r2 + self.g * self.s2 == 0
        return ok

    def complement(self) -> "SrgParams":
        v, k, lam, mu = self.tuple
        return SrgParams.of(v, v - k - 1, v - 2 * k + mu - 2, v - 2 * k + lam)

    def __repr__(self):
        return f"SRG{self.tuple}"


def check_srg(g: Graph) -> SrgParams | None:
    """SRG parameters of g, or None when g is not strongly regular."""
    v = g.v
    deg = g.degrees
    if deg[0] in (0, v - 1) and np.all(deg == deg[0]):
        raise ValueError("complete and edgeless graphs are excluded")
    if not np.all(deg == deg[0]):
        return None
    cc = g.common_counts()
    iu = np.triu_indices(v, 1)
    vals = cc[iu]
    adj = g.adj[iu]
    lam_vals = np.unique(vals[adj])
    mu_vals = np.unique(vals[~adj])
    if len(lam_vals) > 1 or len(mu_vals) > 1:
        return None
    lam = int(lam_vals[0]) if len(lam_vals) else 0
    mu = int(mu_vals[0]) if len(mu_vals) else 0
    return SrgParams.of(v, int(deg[0]), lam, mu)


def abc_params(eps: int, t: int) -> tuple[SrgParams, SrgParams, SrgParams]:
    """The three parameter sets A, B, C attached to eps*t.

    A graph with parameters A whose local graphs have parameters B has
    second subconstituents with parameters C.  Raises ValueError when the
    sets are not integral (t odd).
    """
    if eps not in (1, -1) or t < 1:
        raise ValueError("need eps = +-1 and t >= 1")
    sets = [
        (4 * t * t, 2 * t * t - eps * t, t * t - eps * t, t * t - eps * t),
        (2 * t * t - eps * t, t * t - eps * t, Fraction(t * (t - eps), 2),
         t * Fraction(t, 2) - eps * t),
        (2 * t * t + eps * t - 1, t * t, Fraction(t * (t - eps), 2), Fraction(t * t, 2)),
    ]
    out = []
    for p in sets:
        if any(Fraction(x).denominator != 1 for x in p):
            raise ValueError(f"parameters for t = {t} are not integral")
        out.append(SrgParams.of(*(int(x) for x in p)))
    return tuple(out)


# -- 4-vertex condition ---------------------------------------------------------

@dataclass(frozen=True)
class FourVCReport:
    """Outcome of the Sims criterion.

    ``witness`` is (x, y, observed, expected) for the lexicographically
    first pair whose count differs from the first pair of the same kind.
    ``lambda_prime``/``mu_prime`` are the valencies of the lambda- and
    mu-graphs when these are all regular of one valency, else None.
    """

    srg: SrgParams
    satisfied: bool
    alpha: int | None
    beta: int | None
    witness: tuple[int, int, int, int] | None = None
    lambda_prime: int | None = None
    mu_prime: int | None = None

    @property
    def sims_identity(self) -> bool:
        if not self.satisfied:
            return False
        v, k, lam, mu = self.srg.tuple
        return k * (math.comb(lam, 2) - self.alpha) == self.beta * (v - k - 1)

    def to_json(self) -> dict:
        v, k, lam, mu = self.srg.tuple
        return {"v": v, "k": k, "lambda": lam, "mu": mu,
                "alpha": self.alpha, "beta": self.beta, "fourvc": self.satisfied,
                "witness": None if self.witness is None else list(self.witness[:2]),
                "lambda_prime": self.lambda_prime, "mu_prime": self.mu_prime}


@dataclass(frozen=True)
class LocalParams:
    """Valencies of the lambda- and mu-graphs, when regular."""

    lambda_prime: int | None
    mu_prime: int | None
    lambda_regular: bool
    mu_regular: bool


def _pair_stats(g: Graph, threads: int | None = None):
    if threads:
        old = numba.get_num_threads()
        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))
        try:
            return _kernels.common_edge_counts(g.rows)
        finally:
            numba.set_num_threads(old)
    return _kernels.common_edge_counts(g.rows)


def _constant_valency(lo: np.ndarray, hi: np.ndarray, size: int) -> int | None:
    if size == 0:
        return 0
    if np.all(lo == hi) and np.all(lo == lo[0]):
        return int(lo[0])
    return None


def four_vertex_check(g: Graph, srg: SrgParams | None = None,
                      threads: int | None = None) -> FourVCReport:
    """Count edges in every common neighbourhood and test the Sims criterion."""
    if srg is None:
        srg = check_srg(g)
    if srg is None:
        raise NotStronglyRegular("the 4-vertex condition needs a strongly regular graph")
    edges, lo, hi = _pair_stats(g, threads)
    iu = np.triu_indices(g.v, 1)
    counts = edges[iu]
    adj = g.adj[iu]
    first = {}
    for kind in (True, False):
        idx = np.flatnonzero(adj == kind)
        first[kind] = int(counts[idx[0]])
    expected = np.where(adj, first[True], first[False])
    bad = np.flatnonzero(counts != expected)
    lam_p = _constant_valency(lo[iu][adj], hi[iu][adj], srg.lam)
    mu_p = _constant_valency(lo[iu][~adj], hi[iu][~adj], srg.mu)
    if len(bad):
        i = bad[0]
        witness = (int(iu[0][i]), int(iu[1][i]), int(counts[i]), int(expected[i]))
        return FourVCReport(srg, False, None, None, witness, lam_p, mu_p)
    rep = FourVCReport(srg, True, first[True], first[False], None, lam_p, mu_p)
    if not rep.sims_identity:  # pragma: no cover - would mean a counting bug
        raise AssertionError(f"Sims identity fails for {rep}")
    return rep


def local_params(g: Graph, threads: int | None = None) -> LocalParams:
    srg = check_srg(g)
    if srg is None:
        raise NotStronglyRegular("local parameters need a strongly regular graph")
    rep = four_vertex_check(g, srg, threads)
    return LocalParams(rep.lambda_prime, rep.mu_prime,
                       rep.lambda_prime is not None, rep.mu_prime is not None)


def subconstituent(g: Graph, x: int, which: str = "first") -> Graph:
    """Induced graph on the neighbours ('first') or non-neighbours ('second') of x."""
    if which in ("first", 1):
        return g.induced(g.neighbors(x))
    if which in ("second", 2):
        mask = ~g.adj[x]
        mask[x] = False
        return g.induced(np.flatnonzero(mask))
    raise ValueError("which must be 'first' or 'second'")


def lambda_mu_graph(g: Graph, x: int, y: int) -> Graph:
    """Induced graph on the common neighbours of two distinct vertices."""
    if x == y:
        raise ValueError("need two distinct vertices")
    return g.induced(np.flatnonzero(g.adj[x] & g.adj[y]))


def srg_report(g: Graph, threads: int | None = None) -> dict:
    """JSON-ready report: SRG parameters and the 4-vertex condition."""
    srg = check_srg(g)
    if srg is None:
        return {"v": g.v, "srg": False, "fourvc": False}
    rep = four_vertex_check(g, srg, threads)
    out = rep.to_json()
    out["srg"] = True
    return out


# -- graph6 ----------------------------------------------------------------------

def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return b"~" + bytes([63 + ((n >> s) & 63) for s in (12, 6, 0)])
    if n < 68719476736:
        return b"~~" + bytes([63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("too many vertices for graph6")


def encode_graph6(g: Graph) -> bytes:
    """graph6 string (without header or newline)."""
    n = g.v
    r, c = np.tril_indices(n, -1)
    # upper triangle in column-major order: (i, j) with i < j, by j then i
    bits = g.adj[c, r].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return _encode_n(n) + (vals + 63).astype(np.uint8).tobytes()


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data or any(ch < 63 or ch > 126 for ch in data):
        raise ValueError("malformed graph6 string")
    if data[0] != 126:
        n, body = data[0] - 63, data[1:]
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise ValueError("malformed graph6 string")
        n = 0
        for ch in data[1:4]:
            n = (n << 6) | (ch - 63)
        body = data[4:]
    else:
        if len(data) < 8:
            raise ValueError("malformed graph6 string")
        n = 0
        for ch in data[2:8]:
            n = (n << 6) | (ch - 63)
        body = data[8:]
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    vals = np.frombuffer(body, dtype=np.uint8) - 63
    bits = ((vals[:, None] >> np.array([5, 4, 3, 2, 1, 0], dtype=np.uint8)) & 1).ravel()
    a = np.zeros((n, n), dtype=bool)
    r, c = np.tril_indices(n, -1)
    a[c, r] = bits[:need].astype(bool)
    a |= a.T
    return Graph(a, validate=False)


def params_to_json(p: SrgParams) -> dict:
    d = asdict(p)
    for key in ("f", "g"):
        if isinstance(d[key], Fraction):
            d[key] = str(d[key])
    return d
