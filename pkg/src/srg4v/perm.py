"""Permutation groups on {0, ..., n-1}.

A permutation is a numpy integer array ``g`` with ``g[x]`` the image of x.
Products read left to right: ``mul(a, b)`` applies a first, then b.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

import numpy as np

PERM_DTYPE = np.int32


def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=PERM_DTYPE)


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return b[a]


def inverse(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a), dtype=a.dtype)
    return out


def is_identity(a: np.ndarray) -> bool:
    return bool(np.all(a == np.arange(len(a))))


def as_perm(p: Sequence[int]) -> np.ndarray:
    a = np.asarray(p, dtype=PERM_DTYPE)
    if sorted(a.tolist()) != list(range(len(a))):
        raise ValueError("not a permutation")
    return a


def cycle_type(a: np.ndarray) -> tuple[int, ...]:
    """Sorted cycle lengths (largest first), fixed points included."""
    seen = np.zeros(len(a), dtype=bool)
    lengths = []
    for x in range(len(a)):
        if not seen[x]:
            n, y = 0, x
            while not seen[y]:
                seen[y] = True
                y = a[y]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def orbits(gens: Iterable[np.ndarray], n: int) -> list[list[int]]:
    """Orbits of the group generated by ``gens``, each sorted, ordered by least element."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x, y in enumerate(g.tolist()):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return [groups[r] for r in sorted(groups)]


def closure(gens: Sequence[np.ndarray], n: int, limit: int = 100_000) -> list[np.ndarray]:
    """All elements of the group generated by ``gens`` (breadth-first)."""
    e = identity(n)
    seen = {e.tobytes(): e}
    frontier = [e]
    gens = [np.asarray(g, dtype=PERM_DTYPE) for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mul(a, g)
                key = b.tobytes()
                if key not in seen:
                    seen[key] = b
                    nxt.append(b)
                    if len(seen) > limit:
                        raise ValueError(f"group has more than {limit} elements")
        frontier = nxt
    return list(seen.values())


class _Level:
    __slots__ = ("base", "gens", "where", "reps", "reps_inv")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[np.ndarray] = []
        self.where = np.full(n, -1, dtype=np.int64)
        self.where[base] = 0
        e = identity(n)
        self.reps = [e]
        self.reps_inv = [e]

    def rebuild(self, n: int):
        """Orbit of the base point with a transversal u_x (u_x maps base to x)."""
        self.where = np.full(n, -1, dtype=np.int64)
        self.where[self.base] = 0
        e = identity(n)
        self.reps, orbit = [e], [self.base]
        i = 0
        while i < len(orbit):
            x, u = orbit[i], self.reps[i]
            for g in self.gens:
                y = int(g[x])
                if self.where[y] < 0:
                    self.where[y] = len(orbit)
                    orbit.append(y)
                    self.reps.append(mul(u, g))
            i += 1
        self.reps_inv = [inverse(u) for u in self.reps]

    @property
    def orbit_size(self) -> int:
        return len(self.reps)

    def orbit(self) -> list[int]:
        return [int(u[self.base]) for u in self.reps]


class StabChain:
    """Stabilizer chain built by the randomized Schreier-Sims algorithm.

    With ``order`` known, the chain is complete once the product of basic
    orbit lengths reaches it; that makes the randomized algorithm exact.
    """

    def __init__(self, n: int, base: Sequence[int] = ()):
        self.n = n
        self.levels: list[_Level] = [_Level(int(b), n) for b in base]

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def order(self) -> int:
        return math.prod(lv.orbit_size for lv in self.levels)

    def strong_generators(self) -> list[np.ndarray]:
        return self.levels[0].gens if self.levels else []

    def sift(self, g: np.ndarray) -> tuple[np.ndarray, int]:
        for i, lv in enumerate(self.levels):
            j = lv.where[g[lv.base]]
            if j < 0:
                return g, i
            g = mul(g, lv.reps_inv[j])
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        h, i = self.sift(np.asarray(g, dtype=PERM_DTYPE))
        return i == len(self.levels) and is_identity(h)

    def _add(self, h: np.ndarray, i: int):
        if i == len(self.levels):
            moved = np.flatnonzero(h != np.arange(self.n))
            self.levels.append(_Level(int(moved[0]), self.n))
        for j in range(i + 1):
            self.levels[j].gens.append(h)
        for j in range(i + 1):
            self.levels[j].rebuild(self.n)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform random element (the chain must be complete)."""
        g = identity(self.n)
        for lv in reversed(self.levels):
            g = mul(g, lv.reps[rng.integers(lv.orbit_size)])
        return g

    def stabilizer(self, depth: int = 1) -> "StabChain":
        """Chain of the pointwise stabilizer of the first ``depth`` base points."""
        out = StabChain(self.n)
        out.levels = self.levels[depth:]
        return out

    @classmethod
    def build(cls, gens: Sequence[np.ndarray], n: int, order: int | None = None,
              base: Sequence[int] = (), rng: np.random.Generator | None = None,
              source: "StabChain | None" = None, max_idle: int = 60) -> "StabChain":
        """Stabilizer chain of <gens> with the given base prefix.

        Random elements come from ``source`` (a complete chain of the same
        group) when given, else from product replacement on ``gens``.
        Without a known ``order`` the build stops after ``max_idle``
        consecutive sifts that add nothing, which is then only probably
        complete; pass ``order`` for an exact result.
        """
        rng = np.random.default_rng(0) if rng is None else rng
        chain = cls(n, base)
        gens = [np.asarray(g, dtype=PERM_DTYPE) for g in gens
                if not is_identity(np.asarray(g))]
        if source is not None:
            order = source.order() if order is None else order
            draw = lambda: source.random_element(rng)  # noqa: E731
        else:
            draw = _ProductReplacement(gens, n, rng)
            for g in gens:
                h, i = chain.sift(g)
                if not is_identity(h):
                    chain._add(h, i)
        if order is not None and order == 1:
            return chain
        idle = 0
        tries = 0
        while True:
            if order is not None:
                cur = chain.order()
                if cur == order:
                    return chain
                if cur > order:
                    raise ValueError(f"group order exceeds the expected {order}")
            elif idle >= max_idle:
                return chain
            tries += 1
            if tries > 200_000:
                raise RuntimeError("Schreier-Sims did not converge")
            h, i = chain.sift(draw())
            if is_identity(h):
                idle += 1
            else:
                idle = 0
                chain._add(h, i)


class _ProductReplacement:
    """Product replacement random elements (nearly uniform after warm-up)."""

    def __init__(self, gens: Sequence[np.ndarray], n: int, rng: np.random.Generator):
        self.rng = rng
        self.n = n
        base = list(gens) or [identity(n)]
        self.state = [base[i % len(base)] for i in range(max(10, len(base)))]
        self.acc = identity(n)
        for _ in range(50):
            self()

    def __call__(self) -> np.ndarray:
        s, r = self.state, self.rng
        i, j = r.choice(len(s), size=2, replace=False)
        if r.random() < 0.5:
            s[i] = mul(s[i], s[j])
        else:
            s[i] = mul(s[j], s[i])
        self.acc = mul(self.acc, s[i])
        return self.acc


def group_order(gens: Sequence[np.ndarray], n: int, order: int | None = None) -> int:
    return StabChain.build(gens, n, order=order).order()


def cycle_type_counts(elements: Iterable[np.ndarray]) -> Counter:
    return Counter(cycle_type(g) for g in elements)


def class_size(ctype: Sequence[int]) -> int:
    """Number of permutations of Sym(n) with cycle type ``ctype``."""
    n = sum(ctype)
    size = math.factorial(n)
    for length, mult in Counter(ctype).items():
        size //= length**mult * math.factorial(mult)
    return size
