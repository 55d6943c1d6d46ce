"""Constructions of the strongly regular graph families studied here.

Every constructor checks the parameters of its output against the closed
formulas and raises :class:`ConstructionError` on a mismatch, so a graph
returned from this module is already known to be strongly regular with the
advertised parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .field import GF, prime_power
from .geometry import FormedSpace, Subspace
from .graph import FourVCReport, Graph, SrgParams, abc_params, check_srg

DENSE_LIMIT = 20_000


class ConstructionError(AssertionError):
    """A constructed graph does not have the parameters it should have."""


def _expect(g: Graph, params: tuple[int, int, int, int], name: str) -> Graph:
    got = check_srg(g)
    if got is None or got.tuple != tuple(params):
        raise ConstructionError(f"{name}: expected SRG{tuple(params)}, got {got}")
    return g


def cayley_graph(q: int, n: int, p: int, connection: np.ndarray) -> Graph:
    """Cayley graph on (Z_p)^m with elements encoded in base p.

    ``q`` is the order of the coordinate field (a power of p), ``n`` the
    number of coordinates and ``connection`` a boolean mask over [0, q^n).
    """
    v = q**n
    if v > DENSE_LIMIT:
        raise ValueError(f"{v} vertices is beyond the dense-graph limit {DENSE_LIMIT}")
    conn = np.asarray(connection, dtype=bool)
    if conn[0]:
        raise ValueError("connection set contains 0")
    x = np.arange(v, dtype=np.int64)
    if p == 2:
        diff = x[:, None] ^ x[None, :]
    else:
        diff = np.zeros((v, v), dtype=np.int64)
        pw = 1
        while pw < v:
            d = (x // pw) % p
            diff += ((d[:, None] - d[None, :]) % p) * pw
            pw *= p
    adj = conn[diff]
    if not np.array_equal(adj, adj.T):
        raise ValueError("connection set is not closed under negation")
    return Graph(adj, validate=False)


# -- polar spaces -------------------------------------------------------------

def polar_space(kind: str, d: int, q: int) -> FormedSpace:
    """Standard polar space of rank d: Sp_2d(q), O_2d+1(q), O+_2d(q) or O-_2d+2(q)."""
    F = GF.of_order(q)
    kind = {"sp": "symplectic", "o": "parabolic", "o+": "hyperbolic",
            "o-": "elliptic"}.get(kind, kind)
    n = {"symplectic": 2 * d, "parabolic": 2 * d + 1,
         "hyperbolic": 2 * d, "elliptic": 2 * d + 2}[kind]
    return FormedSpace.standard(kind, F, n)


def polar_params(space: FormedSpace) -> tuple[int, int, int, int]:
    """SRG parameters of the collinearity graph of a polar space of rank d."""
    q, d = space.field.q, space.witt_index
    # e = 0, 1, 2 for hyperbolic, parabolic/symplectic, elliptic
    e = {"hyperbolic": 0, "parabolic": 1, "symplectic": 1, "elliptic": 2}[space.kind]
    v = (q**d - 1) * (q ** (d - 1 + e) + 1) // (q - 1)
    k = q * (q ** (d - 2 + e) + 1) * (q ** (d - 1) - 1) // (q - 1)
    lam = q - 1
    if d > 2:
        lam += q**2 * (q ** (d - 3 + e) + 1) * (q ** (d - 2) - 1) // (q - 1)
    mu = (q ** (d - 2 + e) + 1) * (q ** (d - 1) - 1) // (q - 1)
    return v, k, lam, mu


def polar_adjacency(space: FormedSpace) -> np.ndarray:
    """Collinearity of the isotropic (singular) points, in point-index order."""
    P = space.points[space.isotropic_points]
    adj = space.bilinear(P, P) == 0
    np.fill_diagonal(adj, False)
    return adj


def polar_collinearity_graph(space: FormedSpace) -> Graph:
    """Collinearity graph on the isotropic/singular points of the space.

    Vertex i is the point ``space.isotropic_points[i]``.
    """
    if space.witt_index < 2:
        raise ValueError("the polar space needs rank at least 2")
    g = Graph(polar_adjacency(space), validate=False)
    return _expect(g, polar_params(space), f"collinearity graph of {space!r}")


# -- NO graphs ------------------------------------------------------------------

def no_params(m: int, q: int, eps: int) -> tuple[int, int, int, int]:
    v = q**m * (q**m + eps) // 2
    k = (q ** (m - 1) + eps) * (q**m - eps)
    lam = 2 * (q ** (2 * m - 2) - 1) + eps * q ** (m - 1) * (q - 1)
    mu = 2 * q ** (m - 1) * (q ** (m - 1) + eps)
    return v, k, lam, mu


def no_mu_valency(m: int, q: int, eps: int) -> int:
    """Valency of every mu-graph of NO^eps_2m+1(q)."""
    return 4 * q ** (2 * m - 3) + 3 * eps * q ** (m - 1) - 4 * eps * q ** (m - 2) - 1


def no_vertices(space: FormedSpace, eps: int) -> np.ndarray:
    ns = space.nonsingular_points
    return ns[space.point_types(ns) == eps]


def no_graph(m: int, q: int, eps: int, space: FormedSpace | None = None) -> Graph:
    """Nonsingular points of type eps of a parabolic quadric, adjacent on tangents.

    Vertex i is the point ``no_vertices(space, eps)[i]`` of the standard
    parabolic space of dimension 2m+1.
    """
    if m < 2 or eps not in (1, -1):
        raise ValueError("need m >= 2 and eps = +-1")
    F = GF.of_order(q)
    if not F.odd:
        raise ValueError("NO graphs are constructed for odd q only")
    if space is None:
        space = FormedSpace.parabolic(F, 2 * m + 1)
    X = space.points[no_vertices(space, eps)]
    B = space.bilinear(X, X)
    Qx = space.quadratic(X)
    # the line xy is tangent iff B(x,y)^2 - 4 Q(x) Q(y) vanishes
    disc = F.sub(F.mul(B, B), F.mul(4 % F.p, F.mul(Qx[:, None], Qx[None, :])))
    adj = disc == 0
    np.fill_diagonal(adj, False)
    return _expect(Graph(adj, validate=False), no_params(m, q, eps), f"NO^{eps:+d}_{2*m+1}({q})")


# -- disjoint totally isotropic planes --------------------------------------------

def disjoint_planes_params(q: int) -> tuple[int, int, int, int]:
    return ((q**3 + 1) * (q**2 + 1) * (q + 1), q**6, q**2 * (q**3 - 1) * (q - 1), (q - 1) * q**5)


def delta_bar_params(q: int) -> tuple[int, int, int, int]:
    return (q**6, (q**2 + 1) * (q**3 - 1), q**4 + q**3 - q**2 - 2, q**4 + q**2)


def sp6_planes(q: int) -> tuple[FormedSpace, list[Subspace], np.ndarray]:
    """The space Sp_6(q), its t.i. planes and their plane-by-point incidence."""
    space = FormedSpace.symplectic(GF.of_order(q), 6)
    planes = space.totally_isotropic_subspaces(3)
    inc = np.zeros((len(planes), len(space.points)), dtype=np.float32)
    for i, P in enumerate(planes):
        inc[i, space.points_of(P)] = 1
    return space, planes, inc


def sp6_disjoint_planes_graph(q: int) -> Graph:
    """Totally isotropic planes of Sp_6(q), adjacent when disjoint."""
    _, _, inc = sp6_planes(q)
    adj = (inc @ inc.T) == 0
    return _expect(Graph(adj, validate=False), disjoint_planes_params(q), f"disjoint planes q={q}")


def local_delta(q: int, g: Graph | None = None) -> Graph:
    """Local graph of the disjoint-planes graph at its first vertex."""
    if g is None:
        g = sp6_disjoint_planes_graph(q)
    delta = g.induced(g.neighbors(0))
    v, k, lam, mu = delta_bar_params(q)
    return _expect(delta, SrgParams.of(v, k, lam, mu).complement().tuple, "local graph Delta")


def delta_bar(q: int, g: Graph | None = None) -> Graph:
    return _expect(local_delta(q, g).complement(), delta_bar_params(q), "Delta-bar")


# -- hyperovals -----------------------------------------------------------------------

def hyperoval_params(q: int) -> tuple[int, int, int, int]:
    return (q**3, q * (q - 1) ** 2 // 2, q * (q - 2) * (q - 3) // 4, q * (q - 1) * (q - 2) // 4)


def hyperoval_local_params(q: int) -> tuple[int, int, int, int]:
    return (q * (q - 1) ** 2 // 2, q * (q - 2) * (q - 3) // 4,
            q * (q * q - 9 * q + 22) // 8, q * (q - 3) * (q - 4) // 8)


def regular_hyperoval(F: GF) -> np.ndarray:
    """The conic {(1, t, t^2)} with (0, 0, 1) and its nucleus (0, 1, 0)."""
    t = F.elements()
    conic = np.stack([np.ones_like(t), t, F.mul(t, t)], axis=1)
    return np.vstack([conic, [[0, 0, 1], [0, 1, 0]]])


def exterior_directions(F: GF) -> np.ndarray:
    """Mask over vectors of GF(q)^3 (index a + q b + q^2 c) whose point is exterior.

    The dual hyperoval consists of the lines a.x = 0 for a in the regular
    hyperoval; a point is exterior when it lies on none of them.
    """
    q = F.q
    idx = np.arange(q**3)
    X = np.stack([idx % q, (idx // q) % q, idx // (q * q)], axis=1)
    O = regular_hyperoval(F)
    dot = np.zeros((len(X), len(O)), dtype=np.int64)
    for i in range(3):
        dot = F.add(dot, F.mul(X[:, i:i + 1], O[None, :, i]))
    ext = np.all(dot != 0, axis=1)
    ext[0] = False
    return ext


def hyperoval_graph(q: int) -> Graph:
    """Vectors of GF(q)^3, adjacent when their difference points to an exterior point."""
    p, m = prime_power(q)
    if p != 2 or m < 2:
        raise ValueError("the hyperoval graph needs q = 2^m with m >= 2")
    F = GF(2, m)
    conn = exterior_directions(F)
    if conn.sum() != (q - 1) * q * (q - 1) // 2:
        raise ConstructionError("wrong number of exterior points")
    # coordinates are bit fields of width m, so vector addition is XOR
    g = cayley_graph(2, 3 * m, 2, conn)
    return _expect(g, hyperoval_params(q), f"hyperoval graph q={q}")


# -- cyclotomic graphs ----------------------------------------------------------------

def cyclotomic_connection(F: GF, e: int, J: Sequence[int]) -> np.ndarray:
    """Mask of D = {eta^(ie+j) : j in J}."""
    q = F.q
    if e < 1 or ((q - 1) // 2) % e or not F.odd:
        raise ValueError(f"e = {e} must divide (q-1)/2 = {(q - 1) // 2}")
    J = sorted(set(int(j) for j in J))
    if not J or J[0] < 0 or J[-1] >= e:
        raise ValueError("J must be a nonempty subset of {0, ..., e-1}")
    mask = np.zeros(q, dtype=bool)
    logs = np.arange(q - 1)
    mask[F.exp[logs[np.isin(logs % e, J)]]] = True
    return mask


def cyclotomic_graph(F: GF, e: int, J: Sequence[int]) -> Graph:
    """Cayley graph on (GF(q), +) with connection set D."""
    return cayley_graph(F.q, 1, F.p, cyclotomic_connection(F, e, J))


@dataclass(frozen=True)
class CyclotomicReport:
    """Strong regularity and 4-vertex data of a cyclotomic graph."""

    q: int
    e: int
    J: tuple[int, ...]
    srg: SrgParams | None
    fourvc: FourVCReport | None
    per_class: tuple[tuple[int, int, int, int, int], ...]


def cyclotomic_report(F: GF, e: int, J: Sequence[int]) -> CyclotomicReport:
    """Exact (lambda, mu, alpha, beta) of a cyclotomic graph using its symmetry.

    The maps x -> a x + b with a a power of eta^e are automorphisms, and
    they are transitive on pairs (x, y) whose difference lies in a fixed
    coset eta^j <eta^e>.  So checking the pairs (0, eta^j), j < e, is
    the same as checking all pairs.
    """
    conn = cyclotomic_connection(F, e, J)
    digits = F.digits(F.elements()).astype(np.int64)
    rows = []
    for j in range(e):
        d = int(F.exp[j])
        c, edges, lo, hi = _kernels.cayley_pair_stats(conn, digits, F._pw, F.p, d)
        rows.append((j, int(c), int(edges), int(lo), int(hi)))
    Jset = set(int(x) for x in J)
    adj_rows = [r for r in rows if r[0] in Jset]
    non_rows = [r for r in rows if r[0] not in Jset]
    k = int(conn.sum())
    lam = {r[1] for r in adj_rows}
    mu = {r[1] for r in non_rows} if non_rows else {0}
    srg = fourvc = None
    if len(lam) == 1 and len(mu) == 1 and k < F.q - 1:
        srg = SrgParams.of(F.q, k, lam.pop(), mu.pop())
        alphas = {r[2] for r in adj_rows}
        betas = {r[2] for r in non_rows}
        lam_p = {(r[3], r[4]) for r in adj_rows}
        mu_p = {(r[3], r[4]) for r in non_rows}
        lp = next(iter(lam_p))[0] if len(lam_p) == 1 and len(set(next(iter(lam_p)))) == 1 else None
        mp = next(iter(mu_p))[0] if len(mu_p) == 1 and len(set(next(iter(mu_p)))) == 1 else None
        if len(alphas) == 1 and len(betas) == 1:
            fourvc = FourVCReport(srg, True, alphas.pop(), betas.pop(), None, lp, mp)
        else:
            fourvc = FourVCReport(srg, False, None, None, None, lp, mp)
    return CyclotomicReport(F.q, e, tuple(sorted(Jset)), srg, fourvc, tuple(rows))


# -- binary spaces: Ivanov's graphs ----------------------------------------------------

def _bits(x: np.ndarray, i: int) -> np.ndarray:
    return (x >> i) & 1


def _q_hyperbolic(x: np.ndarray, m: int) -> np.ndarray:
    # x_{2i-1} x_{2i} with coordinate j (1-based) in bit j-1
    out = np.zeros_like(x)
    for i in range(m):
        out ^= _bits(x, 2 * i) & _bits(x, 2 * i + 1)
    return out


def _q_elliptic(x: np.ndarray, m: int) -> np.ndarray:
    return _q_hyperbolic(x, m) ^ _bits(x, 0) ^ _bits(x, 1)


def _gamma_connection(m: int) -> np.ndarray:
    """Nonzero singular vectors of the hyperbolic form minus S = <e1, e3, ...>."""
    x = np.arange(1 << (2 * m), dtype=np.int64)
    even_mask = sum(1 << (2 * i + 1) for i in range(m))
    in_s = (x & even_mask) == 0
    conn = (_q_hyperbolic(x, m) == 0) & ~in_s
    conn[0] = False
    return conn


def ivanov_gamma(m: int) -> Graph:
    """The graph Gamma^(m) on GF(2)^2m with parameters A(2^(m-1))."""
    if m < 2:
        raise ValueError("need m >= 2")
    g = cayley_graph(2, 2 * m, 2, _gamma_connection(m))
    return _expect(g, abc_params(1, 2 ** (m - 1))[0].tuple, f"Gamma^({m})")


def ivanov_gamma0(seed: int = 0) -> Graph:
    """Ivanov's 256-vertex graph rebuilt from the polar-space machinery.

    Uses the standard hyperbolic form x0x1 + x2x3 + ... of FormedSpace and a
    maximal totally singular subspace drawn at random (by ``seed``), so the
    coordinates are unrelated to those of :func:`ivanov_gamma`.
    """
    space = FormedSpace.hyperbolic(GF(2), 8)
    maximal = space.totally_isotropic_subspaces(4)
    U = maximal[np.random.default_rng(seed).integers(len(maximal))]
    conn = np.zeros(256, dtype=bool)
    sing = space.points[space.isotropic_points]
    keys = sing @ (1 << np.arange(8))
    conn[keys] = True
    u_pts = space.points[space.points_of(U)] @ (1 << np.arange(8))
    conn[u_pts] = False
    g = cayley_graph(2, 8, 2, conn)
    return _expect(g, (256, 120, 56, 56), "Gamma_0")


def sigma_sets(m: int) -> dict[str, np.ndarray]:
    """Masks over GF(2)^2m of Q (nonzero singular), S, S-perp and R."""
    x = np.arange(1 << (2 * m), dtype=np.int64)
    odd_hi = sum(1 << (2 * i) for i in range(1, m))      # x_{2i-1}, i >= 2
    Q = _q_elliptic(x, m) == 0
    Sp = (x & odd_hi) == 0
    S = Sp & (_bits(x, 0) == 0) & (_bits(x, 1) == 0)
    for mask in (Q, Sp, S):
        mask[0] = False
    R = ~(Q | Sp)
    R[0] = False
    return {"Q": Q, "S": S, "Sperp": Sp, "R": R}


def ivanov_sigma(m: int) -> Graph:
    """The graph Sigma^(m) on GF(2)^2m with parameters A(-2^(m-1))."""
    if m < 2:
        raise ValueError("need m >= 2")
    s = sigma_sets(m)
    conn = (s["Q"] | s["Sperp"]) & ~s["S"]
    g = cayley_graph(2, 2 * m, 2, conn)
    return _expect(g, abc_params(-1, 2 ** (m - 1))[0].tuple, f"Sigma^({m})")


def ivanov_tee(m: int, sigma: Graph | None = None) -> Graph:
    """T^(m): the neighbours of 0 in Sigma^(m), in increasing vector order."""
    sigma = ivanov_sigma(m) if sigma is None else sigma
    return _expect(sigma.induced(sigma.neighbors(0)),
                   abc_params(-1, 2 ** (m - 1))[1].tuple, f"T^({m})")


def ivanov_upsilon(m: int, sigma: Graph | None = None) -> Graph:
    """Upsilon^(m): the non-neighbours of 0 in Sigma^(m), in increasing vector order."""
    sigma = ivanov_sigma(m) if sigma is None else sigma
    return _expect(sigma.induced(upsilon_vertices(m, sigma)),
                   abc_params(-1, 2 ** (m - 1))[2].tuple, f"Upsilon^({m})")


def upsilon_vertices(m: int, sigma: Graph | None = None) -> np.ndarray:
    sigma = ivanov_sigma(m) if sigma is None else sigma
    mask = ~sigma.adj[0]
    mask[0] = False
    return np.flatnonzero(mask)


FAMILIES = {
    "polar": "polar_collinearity_graph",
    "no": "no_graph",
    "disjoint-planes": "sp6_disjoint_planes_graph",
    "hyperoval": "hyperoval_graph",
    "cyclotomic": "cyclotomic_graph",
    "ivanov-gamma": "ivanov_gamma",
    "ivanov-sigma": "ivanov_sigma",
}
