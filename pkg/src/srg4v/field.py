"""Finite fields GF(p^k) backed by log/antilog tables.

Elements are plain integers in ``[0, q)``: the integer ``sum(c_i * p**i)``
encodes the polynomial ``sum(c_i * x**i)`` reduced modulo the defining
polynomial.  All arithmetic methods of :class:`GF` accept Python ints or
numpy integer arrays, so the graph constructions can work on whole
coordinate arrays at once.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1 << 20


class FieldMismatchError(ValueError):
    """Raised when elements of two different fields are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


# -- polynomial helpers; coefficient lists are low degree first ---------------

def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * lead_inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    out = a[:dm]
    return out + [0] * (dm - len(out))


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _monic_polys(p: int, deg: int) -> Iterable[list[int]]:
    for idx in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(idx % p)
            idx //= p
        yield coeffs + [1]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(modulus) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not any(_poly_mod(list(modulus), f, p)):
                return False
    return True


def _digits(i: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(i % p)
        i //= p
    return out


def _index(digits: Sequence[int], p: int) -> int:
    i = 0
    for c in reversed(digits):
        i = i * p + c
    return i


def _poly_powmod(g: Sequence[int], n: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = list(g)
    while n:
        if n & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        n >>= 1
    return _poly_mod(result, m, p)


def _root_is_primitive(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    q1 = p**k - 1
    one = [1] + [0] * (k - 1)
    x = [0, 1] + [0] * (k - 2)
    return all(_poly_powmod(x, q1 // r, m, p) != one for r in prime_factors(q1))


def _power_table(g: int, p: int, k: int, modulus: Sequence[int]) -> np.ndarray:
    """Successive powers g^0, g^1, ... until the cycle closes."""
    q = p**k
    out = np.empty(q - 1, dtype=np.int64)
    cur = [1] + [0] * (k - 1)
    gd = _digits(g, p, k)
    is_x = gd == [0, 1] + [0] * (k - 2) if k >= 2 else False
    for i in range(q - 1):
        out[i] = _index(cur, p)
        if is_x:
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * m) % p for c, m in zip(cur, modulus)]
        else:
            cur = _poly_mod(_poly_mul(cur, gd, p), modulus, p)
        if cur == [1] + [0] * (k - 1):
            return out[: i + 1]
    return out


class GF:
    """The finite field GF(p^k).

    ``modulus`` is the coefficient list (low degree first, length k+1, monic)
    of the defining polynomial and ``eta`` the index of the chosen primitive
    element.  When omitted, the modulus is the least monic irreducible whose
    root ``x`` is primitive (least by the integer ``sum(c_i p^i)`` of its
    non-leading coefficients) and ``eta`` is the least primitive element.

    >>> F = GF(2, 3)
    >>> F.modulus
    (1, 1, 0, 1)
    >>> F.mul(2, 4)  # x * x^2 = x + 1
    3
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None,
                 eta: int | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        q = p**k
        if q > MAX_ORDER:
            raise ValueError(f"q = {q} exceeds the supported maximum {MAX_ORDER}")
        self.p, self.k, self.q = p, k, q

        if modulus is None:
            modulus = self._default_modulus()
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.modulus = tuple(modulus)

        # antilog table for some generator, then rebase on eta
        gen = self._find_generator()
        exp = _power_table(gen, p, k, self.modulus)
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        if eta is None:
            eta = next(a for a in range(1, q)
                       if np.gcd(int(log[a]), q - 1) == 1)
        eta = int(eta)
        if not 0 < eta < q or np.gcd(int(log[eta]), q - 1) != 1:
            raise ValueError(f"eta = {eta} is not a primitive element of GF({q})")
        self.eta = eta
        # exp_eta[i] = eta^i = gen^(i * log(eta))
        exp_eta = exp[(np.arange(q - 1) * int(log[eta])) % (q - 1)]
        self.exp = np.concatenate([exp_eta, exp_eta])
        self.log = np.full(q, -1, dtype=np.int64)
        self.log[exp_eta] = np.arange(q - 1)
        self.exp.flags.writeable = False
        self.log.flags.writeable = False
        self._pw = p ** np.arange(k, dtype=np.int64)

    def _default_modulus(self) -> list[int]:
        p, k = self.p, self.k
        if k == 1:
            # x - g for the least primitive root g, so that x itself is primitive
            for g in range(1, p):
                if len(_power_table(g, p, 1, [0, 1])) == p - 1 or p == 2:
                    return [(-g) % p, 1]
        for f in _monic_polys(p, k):
            if f[0] and is_irreducible(f, p) and _root_is_primitive(f, p):
                return f
        raise AssertionError("no primitive polynomial found")  # pragma: no cover

    def _find_generator(self) -> int:
        if self.k > 1 and _root_is_primitive(self.modulus, self.p):
            return self.p
        if self.k == 1:
            for g in range(1, self.p):
                if len(_power_table(g, self.p, 1, self.modulus)) == self.p - 1:
                    return g
        for g in range(self.p, self.q):
            if len(_power_table(g, self.p, self.k, self.modulus)) == self.q - 1:
                return g
        raise AssertionError("field has no generator")  # pragma: no cover

    # -- identity -------------------------------------------------------------

    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)}, eta={self.eta})"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus), "eta": self.eta}

    @classmethod
    def from_json(cls, d: dict) -> "GF":
        return cls(d["p"], d.get("k", 1), d.get("modulus"), d.get("eta"))

    @classmethod
    def of_order(cls, q: int) -> "GF":
        p, k = prime_power(q)
        return cls(p, k)

    # -- arithmetic -----------------------------------------------------------

    @property
    def odd(self) -> bool:
        return self.p != 2

    def digits(self, a):
        """Coefficient digits of ``a`` along a new last axis."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def from_digits(self, d):
        return np.asarray(d, dtype=np.int64) @ self._pw

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits((self.digits(a) + self.digits(b)) % self.p)

    def neg(self, a):
        if self.p == 2:
            return a
        if self.k == 1:
            return (-np.asarray(a)) % self.p if not isinstance(a, int) else (-a) % self.p
        return self.from_digits((-self.digits(a)) % self.p)

    def sub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return (a - b) % self.p
        return self.from_digits((self.digits(a) - self.digits(b)) % self.p)

    def mul(self, a, b):
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            if a == 0 or b == 0:
                return 0
            return int(self.exp[self.log[a] + self.log[b]])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                raise ZeroDivisionError("inverse of zero in a finite field")
            return int(self.exp[(-self.log[a]) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if isinstance(a, (int, np.integer)):
            if a == 0:
                if n < 0:
                    raise ZeroDivisionError("inverse of zero in a finite field")
                return 1 if n == 0 else 0
            return int(self.exp[(int(self.log[a]) * n) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        out = self.exp[(self.log[a] * n) % (self.q - 1)]
        return np.where(a == 0, int(n == 0), out)

    def primitive_power(self, i):
        """eta**i (vectorized)."""
        return self.exp[np.asarray(i) % (self.q - 1)] if not isinstance(i, int) \
            else int(self.exp[i % (self.q - 1)])

    def is_square(self, a) -> bool:
        """Whether a nonzero element of an odd-characteristic field is a square."""
        if not self.odd:
            raise ValueError("square classes are only defined here for odd q")
        if a == 0:
            raise ValueError("zero has no square class")
        return self.pow(int(a), (self.q - 1) // 2) == 1

    def square_mask(self) -> np.ndarray:
        """Boolean mask over [0, q) of the nonzero squares (odd q)."""
        mask = np.zeros(self.q, dtype=bool)
        mask[self.exp[0:self.q - 1:2]] = True
        return mask

    def frobenius(self, a):
        return self.pow(a, self.p) if isinstance(a, (int, np.integer)) else \
            self.pow(np.asarray(a), self.p)

    def element(self, i: int) -> "FieldElement":
        return FieldElement(self, int(i))

    def evaluate(self, coeffs: Sequence[int], a):
        """Evaluate the polynomial with coefficients ``coeffs`` (low first) at ``a``."""
        out = np.zeros_like(np.asarray(a, dtype=np.int64))
        for c in reversed(coeffs):
            out = self.add(self.mul(out, a), int(c))
        return out

    def roots(self, coeffs: Sequence[int]) -> list[int]:
        """All roots in the field of the polynomial ``coeffs`` (low degree first).

        Coefficients are element indices; a negative integer -c stands for
        the prime-field element -c mod p.
        """
        vals = self.evaluate([int(c) % self.p if c < 0 else int(c) for c in coeffs],
                             self.elements())
        return [int(i) for i in np.flatnonzero(vals == 0)]

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        a = np.arange(self.q)
        return self.mul(a[:, None], a[None, :])

    @cached_property
    def add_table(self) -> np.ndarray:
        a = np.arange(self.q)
        return self.add(a[:, None], a[None, :])


def field_new(p: int, k: int = 1, modulus: Sequence[int] | None = None,
              eta: int | None = None) -> GF:
    return GF(p, k, modulus, eta)


class FieldElement:
    """A single field element bound to its field; mixing fields is an error."""

    __slots__ = ("field", "index")

    def __init__(self, field: GF, index: int):
        if not 0 <= index < field.q:
            raise ValueError(f"{index} is not an element of GF({field.q})")
        self.field = field
        self.index = int(index)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {b.field!r}")
            return b.index
        if isinstance(b, (int, np.integer)) and b in (0, 1):
            return int(b)
        raise TypeError(f"cannot combine a field element with {b!r}")

    def _wrap(self, i) -> "FieldElement":
        return FieldElement(self.field, int(i))

    def __add__(self, b):
        return self._wrap(self.field.add(self.index, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        return self._wrap(self.field.sub(self.index, self._other(b)))

    def __rsub__(self, b):
        return self._wrap(self.field.sub(self._other(b), self.index))

    def __mul__(self, b):
        return self._wrap(self.field.mul(self.index, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        return self._wrap(self.field.div(self.index, self._other(b)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.index))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.index, n))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.index))

    def is_square(self) -> bool:
        return self.field.is_square(self.index)

    def __eq__(self, b):
        if isinstance(b, FieldElement):
            return self.field == b.field and self.index == b.index
        return isinstance(b, (int, np.integer)) and self.index == b

    def __hash__(self):
        return hash((self.field, self.index))

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"<{self.index} in GF({self.field.q})>"
