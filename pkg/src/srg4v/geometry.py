"""Vector spaces over GF(q) carrying a symplectic or quadratic form.

Projective points are stored once, as normalized coordinate rows (first
nonzero coordinate equal to 1) in lexicographic order, and referenced by
their row index everywhere else.  Subspaces are kept in reduced row echelon
form, which makes equality a tuple comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .field import GF

FORM_KINDS = ("symplectic", "parabolic", "hyperbolic", "elliptic")
_ALIASES = {"sp": "symplectic", "o": "parabolic", "o+": "hyperbolic", "o-": "elliptic",
            "quadratic_parabolic": "parabolic", "quadratic_hyperbolic": "hyperbolic",
            "quadratic_elliptic": "elliptic"}
MAX_POINTS = 100_000


@dataclass(frozen=True)
class Subspace:
    """A subspace given by its RREF basis (tuple of coordinate tuples)."""

    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def projective_points(q: int, d: int) -> np.ndarray:
    """Normalized representatives of PG(d-1, q), in lexicographic order."""
    blocks = []
    for lead in range(d - 1, -1, -1):
        tail = d - lead - 1
        rest = np.array(list(itertools.product(range(q), repeat=tail)),
                        dtype=np.int64).reshape(q**tail, tail)
        block = np.zeros((len(rest), d), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = rest
        blocks.append(block)
    return np.concatenate(blocks)


class _LinAlg:
    """Scalar Gaussian elimination over a small field using Python-list tables."""

    def __init__(self, field: GF):
        q = field.q
        self.q = q
        self.add = field.add_table.tolist()
        self.mul = field.mul_table.tolist()
        self.neg = [int(field.neg(a)) for a in range(q)]
        self.inv = [0] + [field.inv(a) for a in range(1, q)]

    def rref(self, rows: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        m = [list(r) for r in rows]
        if not m:
            return ()
        n = len(m[0])
        out = []
        col = 0
        while m and col < n:
            piv = next((r for r in m if r[col]), None)
            if piv is None:
                col += 1
                continue
            m.remove(piv)
            c = inv[piv[col]]
            piv = [mul[c][x] for x in piv]
            new_m = []
            for r in m:
                f = r[col]
                if f:
                    nf = neg[f]
                    r = [add[x][mul[nf][y]] for x, y in zip(r, piv)]
                if any(r):
                    new_m.append(r)
            m = new_m
            for j, r in enumerate(out):
                f = r[col]
                if f:
                    nf = neg[f]
                    out[j] = [add[x][mul[nf][y]] for x, y in zip(r, piv)]
            out.append(piv)
            col += 1
        return tuple(tuple(r) for r in out)

    def nullspace(self, rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
        """Basis of {x : r . x = 0 for all rows r}."""
        red = self.rref(rows)
        pivots = [next(j for j, x in enumerate(r) if x) for r in red]
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for f in free:
            x = [0] * n
            x[f] = 1
            for r, pc in zip(red, pivots):
                x[pc] = self.neg[r[f]]
            basis.append(x)
        return basis

    def det(self, mat: Sequence[Sequence[int]]) -> int:
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        m = [list(r) for r in mat]
        n = len(m)
        d = 1
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return 0
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = neg[d]
            d = mul[d][m[c][c]]
            ic = inv[m[c][c]]
            for i in range(c + 1, n):
                f = mul[m[i][c]][ic]
                if f:
                    nf = neg[f]
                    m[i] = [add[x][mul[nf][y]] for x, y in zip(m[i], m[c])]
        return d


class FormedSpace:
    """GF(q)^n with a nondegenerate symplectic or quadratic form.

    Use the constructors :meth:`symplectic`, :meth:`parabolic`,
    :meth:`hyperbolic` and :meth:`elliptic` for the standard forms.
    ``quad`` is the upper-triangular coefficient matrix of Q (quadratic
    case); ``gram`` is the matrix of the bilinear form B, equal to
    ``quad + quad.T`` in the quadratic case.
    """

    def __init__(self, field: GF, n: int, kind: str, gram: np.ndarray,
                 quad: np.ndarray | None = None):
        kind = _ALIASES.get(kind, kind)
        if kind not in FORM_KINDS:
            raise ValueError(f"unknown form kind {kind!r}")
        self.field = field
        self.n = n
        self.kind = kind
        self.gram = np.asarray(gram, dtype=np.int64)
        self.quad = None if quad is None else np.asarray(quad, dtype=np.int64)
        if (q := field.q) ** n > MAX_POINTS * (q - 1) + 1:
            raise ValueError("space too large for point enumeration")
        self.la = _LinAlg(field)
        self._validate()

    # -- standard forms ---------------------------------------------------

    @classmethod
    def symplectic(cls, field: GF, n: int) -> "FormedSpace":
        if n % 2:
            raise ValueError("symplectic spaces have even dimension")
        g = np.zeros((n, n), dtype=np.int64)
        for i in range(0, n, 2):
            g[i, i + 1] = 1
            g[i + 1, i] = field.neg(1)
        return cls(field, n, "symplectic", g)

    @classmethod
    def _quadratic(cls, field: GF, n: int, kind: str, quad: np.ndarray) -> "FormedSpace":
        gram = field.add(quad, quad.T)
        return cls(field, n, kind, gram, quad)

    @classmethod
    def parabolic(cls, field: GF, n: int) -> "FormedSpace":
        """x0^2 + x1 x2 + x3 x4 + ... on GF(q)^n, n odd."""
        if n % 2 == 0:
            raise ValueError("parabolic spaces have odd dimension")
        c = np.zeros((n, n), dtype=np.int64)
        c[0, 0] = 1
        for i in range(1, n, 2):
            c[i, i + 1] = 1
        return cls._quadratic(field, n, "parabolic", c)

    @classmethod
    def hyperbolic(cls, field: GF, n: int) -> "FormedSpace":
        """x0 x1 + x2 x3 + ... on GF(q)^n, n even."""
        if n % 2:
            raise ValueError("hyperbolic spaces have even dimension")
        c = np.zeros((n, n), dtype=np.int64)
        for i in range(0, n, 2):
            c[i, i + 1] = 1
        return cls._quadratic(field, n, "hyperbolic", c)

    @classmethod
    def elliptic(cls, field: GF, n: int) -> "FormedSpace":
        """x0^2 + x0 x1 + nu x1^2 + x2 x3 + ..., with t^2 + t + nu irreducible.

        Over GF(2) this is x0^2 + x1^2 + x0 x1 + x2 x3 + ... .
        """
        if n % 2:
            raise ValueError("elliptic spaces have even dimension")
        nu = next(a for a in range(1, field.q)
                  if not len(field.roots([a, 1, 1])))
        c = np.zeros((n, n), dtype=np.int64)
        c[0, 0], c[0, 1], c[1, 1] = 1, 1, nu
        for i in range(2, n, 2):
            c[i, i + 1] = 1
        return cls._quadratic(field, n, "elliptic", c)

    @classmethod
    def standard(cls, kind: str, field: GF, n: int) -> "FormedSpace":
        kind = _ALIASES.get(kind, kind)
        return getattr(cls, kind)(field, n)

    @classmethod
    def from_json(cls, d: dict) -> "FormedSpace":
        return cls.standard(d["form"], GF.from_json(d["field"]), d["n"])

    def to_json(self) -> dict:
        return {"form": self.kind, "n": self.n, "field": self.field.to_json()}

    def __repr__(self):
        return f"FormedSpace({self.kind}, n={self.n}, q={self.field.q})"

    @property
    def is_quadratic(self) -> bool:
        return self.kind != "symplectic"

    @property
    def witt_index(self) -> int:
        n = self.n
        return {"symplectic": n // 2, "parabolic": (n - 1) // 2,
                "hyperbolic": n // 2, "elliptic": n // 2 - 1}[self.kind]

    def _validate(self):
        F, n, la = self.field, self.n, self.la
        g = self.gram
        if g.shape != (n, n):
            raise ValueError("gram matrix has the wrong shape")
        if self.kind == "symplectic":
            if np.any(np.diag(g)) or np.any(g != F.neg(g.T)):
                raise ValueError("symplectic gram matrix must be alternating")
            if la.det(g.tolist()) == 0:
                raise ValueError("degenerate symplectic form")
        else:
            if self.quad is None or np.any(np.tril(self.quad, -1)):
                raise ValueError("quadratic forms need an upper-triangular coefficient matrix")
            rad = la.nullspace(g.tolist(), n)
            if F.odd or n % 2 == 0:
                if rad:
                    raise ValueError("degenerate quadratic form")
            elif len(rad) != 1 or self.quadratic(np.array(rad)).item() == 0:
                raise ValueError("degenerate quadratic form")
        # Witt index check via the number of isotropic / singular points
        q, m = F.q, self.witt_index
        expected = {
            "symplectic": (q**n - 1) // (q - 1),
            "parabolic": (q**(n - 1) - 1) // (q - 1),
            "hyperbolic": (q**(m - 1) + 1) * (q**m - 1) // (q - 1),
            "elliptic": (q**m - 1) * (q**(m + 1) + 1) // (q - 1),
        }[self.kind]
        if len(self.isotropic_points) != expected:
            raise ValueError(f"form is not of type {self.kind}: "
                             f"{len(self.isotropic_points)} singular points, expected {expected}")

    # -- forms on arrays of vectors -------------------------------------------

    def _matmul(self, X: np.ndarray, M: np.ndarray) -> np.ndarray:
        F = self.field
        if F.k == 1:
            return (X @ M) % F.p
        out = np.zeros((X.shape[0], M.shape[1]), dtype=np.int64)
        for i in range(X.shape[1]):
            out = F.add(out, F.mul(X[:, i:i + 1], M[i:i + 1, :]))
        return out

    def bilinear(self, X, Y) -> np.ndarray:
        """Matrix of B(x, y) for rows x of X and y of Y."""
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        Y = np.atleast_2d(np.asarray(Y, dtype=np.int64))
        return self._matmul(self._matmul(X, self.gram), Y.T)

    def quadratic(self, X) -> np.ndarray:
        """Q(x) for every row x of X."""
        F = self.field
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        if F.k == 1:
            return np.einsum("ni,ij,nj->n", X, self.quad, X) % F.p
        out = np.zeros(X.shape[0], dtype=np.int64)
        for i, j in zip(*np.nonzero(self.quad)):
            out = F.add(out, F.mul(int(self.quad[i, j]), F.mul(X[:, i], X[:, j])))
        return out

    # -- projective points -------------------------------------------------

    @cached_property
    def points(self) -> np.ndarray:
        """All projective points as normalized rows, lexicographically ordered."""
        pts = projective_points(self.field.q, self.n)
        pts.flags.writeable = False
        return pts

    @cached_property
    def _keys(self) -> np.ndarray:
        return self.points @ (self.field.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64))

    def normalize(self, X) -> np.ndarray:
        F = self.field
        X = np.atleast_2d(np.asarray(X, dtype=np.int64))
        nz = X != 0
        if not nz.any(axis=1).all():
            raise ValueError("the zero vector is not a projective point")
        lead = X[np.arange(len(X)), nz.argmax(axis=1)]
        return F.mul(X, F.inv(lead)[:, None])

    def index_of(self, X) -> np.ndarray:
        """Point indices of the (not necessarily normalized) rows of X."""
        Xn = self.normalize(X)
        keys = Xn @ (self.field.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64))
        return np.searchsorted(self._keys, keys)

    @cached_property
    def isotropic_points(self) -> np.ndarray:
        """Indices of the isotropic (symplectic) or singular (quadratic) points."""
        if self.kind == "symplectic":
            return np.arange(len(self.points))
        return np.flatnonzero(self.quadratic(self.points) == 0)

    @cached_property
    def nonsingular_points(self) -> np.ndarray:
        if self.kind == "symplectic":
            return np.array([], dtype=np.int64)
        return np.flatnonzero(self.quadratic(self.points) != 0)

    # -- subspaces ------------------------------------------------------------

    def span(self, vectors) -> Subspace:
        return Subspace(self.la.rref(np.asarray(vectors, dtype=np.int64).tolist()))

    def span_points(self, indices) -> Subspace:
        return self.span(self.points[np.asarray(indices)])

    def vectors_of(self, S: Subspace) -> np.ndarray:
        """All q^dim vectors of S, zero included."""
        F = self.field
        if S.dim == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        coeffs = np.array(list(itertools.product(range(F.q), repeat=S.dim)), dtype=np.int64)
        return self._matmul(coeffs, np.array(S.basis, dtype=np.int64))

    def points_of(self, S: Subspace) -> np.ndarray:
        """Sorted point indices of the projective points of S."""
        vecs = self.vectors_of(S)
        vecs = vecs[(vecs != 0).any(axis=1)]
        if len(vecs) == 0:
            return np.array([], dtype=np.int64)
        return np.unique(self.index_of(vecs))

    def contains(self, S: Subspace, x) -> bool:
        return self.la.rref(list(S.basis) + [list(np.asarray(x).ravel())]) == S.basis

    def perp(self, S: Subspace) -> Subspace:
        """The B-orthogonal complement of S."""
        if S.dim == 0:
            return Subspace(self.la.rref(np.eye(self.n, dtype=np.int64).tolist()))
        rows = self._matmul(np.array(S.basis, dtype=np.int64), self.gram).tolist()
        return Subspace(self.la.rref(self.la.nullspace(rows, self.n)))

    def is_totally_isotropic(self, S: Subspace) -> bool:
        if S.dim == 0:
            return True
        b = np.array(S.basis)
        if np.any(self.bilinear(b, b)):
            return False
        return not self.is_quadratic or not np.any(self.quadratic(b))

    def _perp_mask(self, S: Subspace) -> np.ndarray:
        """Boolean mask over all points: which lie in S-perp."""
        if S.dim == 0:
            return np.ones(len(self.points), dtype=bool)
        return ~np.any(self.bilinear(self.points, np.array(S.basis)), axis=1)

    def totally_isotropic_subspaces(self, dim: int) -> list[Subspace]:
        """All totally isotropic (singular) subspaces of the given dimension.

        Built by extending each (dim-1)-space S by an isotropic point of
        S-perp outside S; the result is sorted by RREF basis.
        """
        if dim > self.witt_index:
            raise ValueError(f"dimension {dim} exceeds the Witt index {self.witt_index}")
        iso = np.zeros(len(self.points), dtype=bool)
        iso[self.isotropic_points] = True
        layer = {Subspace(())}
        for _ in range(dim):
            nxt = set()
            for S in layer:
                inside = np.zeros(len(self.points), dtype=bool)
                inside[self.points_of(S)] = True
                cands = np.flatnonzero(self._perp_mask(S) & iso & ~inside)
                base = list(S.basis)
                for p in cands:
                    nxt.add(Subspace(self.la.rref(base + [self.points[p].tolist()])))
            layer = nxt
        return sorted(layer, key=lambda S: S.basis)

    def hyperplanes_of(self, U: Subspace) -> list[Subspace]:
        """The (q^d-1)/(q-1) hyperplanes of U, ordered by their sorted point sets."""
        d = U.dim
        if d < 2:
            raise ValueError("hyperplanes need dim >= 2")
        F = self.field
        dual = projective_points(F.q, d)
        basis = np.array(U.basis, dtype=np.int64)
        out = []
        for c in dual:
            # coefficient vectors a with sum c_i a_i = 0
            ker = self.la.nullspace([c.tolist()], d)
            H = Subspace(self.la.rref(self._matmul(np.array(ker, dtype=np.int64), basis).tolist()))
            out.append(H)
        out.sort(key=lambda H: self.points_of(H).tolist())
        return out

    # -- quadric geometry -----------------------------------------------------

    @cached_property
    def form_det(self) -> int:
        """det of the quadratic form, i.e. det(B) / 2^n (odd q)."""
        F = self.field
        d = self.la.det(self.gram.tolist())
        return F.div(d, F.pow(2 % F.p, self.n))

    def point_type(self, x: int) -> int:
        """Type (+1 hyperbolic perp, -1 elliptic perp) of a nonsingular point."""
        return int(self.point_types(np.array([x]))[0])

    def point_types(self, xs) -> np.ndarray:
        F = self.field
        if self.kind != "parabolic" or not F.odd:
            raise ValueError("point types need a parabolic quadric over an odd field")
        xs = np.asarray(xs)
        qx = self.quadratic(self.points[xs])
        if np.any(qx == 0):
            raise ValueError("singular points have no type")
        m = (self.n - 1) // 2
        c = F.mul(self.form_det, 1 if m % 2 == 0 else F.neg(1))
        sq = F.square_mask()
        return np.where(sq[F.mul(qx, c)], 1, -1)

    def line_points(self, x: int, y: int) -> np.ndarray:
        F = self.field
        px, py = self.points[x], self.points[y]
        t = np.arange(F.q)
        vecs = F.add(px[None, :], F.mul(t[:, None], py[None, :]))
        return np.unique(np.concatenate([self.index_of(vecs), [y]]))

    def line_quadric_meet(self, x: int, y: int) -> str:
        """'tangent', 'secant', 'exterior' or 'contained' by singular-point count."""
        if x == y:
            raise ValueError("a line needs two distinct points")
        pts = self.line_points(x, y)
        ns = int(np.count_nonzero(self.quadratic(self.points[pts]) == 0))
        q = self.field.q
        if ns == q + 1:
            return "contained"
        return {0: "exterior", 1: "tangent", 2: "secant"}[ns]

    def standard_maximal_subspace(self) -> Subspace:
        """A maximal totally isotropic subspace of the standard form."""
        n, w = self.n, self.witt_index
        start = {"symplectic": 0, "hyperbolic": 0, "parabolic": 1, "elliptic": 2}[self.kind]
        rows = []
        for i in range(w):
            e = [0] * n
            e[start + 2 * i] = 1
            rows.append(e)
        U = self.span(rows)
        assert self.is_totally_isotropic(U)
        return U
