import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from srg4v.field import GF
from srg4v.families import polar_space
from srg4v.geometry import FormedSpace, projective_points


def n_points(kind, d, q):
    """Singular points of a rank d polar space."""
    return {"sp": (q**(2 * d) - 1) // (q - 1),
            "o": (q**(2 * d) - 1) // (q - 1),
            "o+": (q**d - 1) * (q**(d - 1) + 1) // (q - 1),
            "o-": (q**(d + 1) + 1) * (q**d - 1) // (q - 1)}[kind]


def n_generators(kind, d, q):
    """Maximal totally isotropic subspaces of a rank d polar space."""
    lo = {"sp": 1, "o": 1, "o+": 0, "o-": 2}[kind]
    return math.prod(q**i + 1 for i in range(lo, lo + d))


CASES = [("sp", 2, 2), ("sp", 3, 2), ("sp", 2, 3), ("sp", 3, 3), ("sp", 2, 4),
         ("o", 2, 3), ("o", 3, 3), ("o", 2, 5), ("o+", 2, 2), ("o+", 3, 2), ("o+", 4, 2),
         ("o+", 2, 3), ("o-", 2, 2), ("o-", 2, 3), ("o-", 3, 2)]


def test_projective_points():
    pts = projective_points(3, 3)
    assert len(pts) == 13
    assert [tuple(r) for r in pts] == sorted(tuple(r) for r in pts)
    for r in pts:
        assert r[np.flatnonzero(r)[0]] == 1


@pytest.mark.parametrize("kind,d,q", CASES)
def test_point_counts(kind, d, q):
    S = polar_space(kind, d, q)
    assert S.witt_index == d
    assert len(S.isotropic_points) == n_points(kind, d, q)


@pytest.mark.parametrize("kind,d,q", [c for c in CASES if c[1] <= 3 and c[2] <= 3])
def test_generator_counts(kind, d, q):
    S = polar_space(kind, d, q)
    gens = S.totally_isotropic_subspaces(d)
    assert len(gens) == n_generators(kind, d, q)
    assert all(S.is_totally_isotropic(U) and U.dim == d for U in gens)


@pytest.mark.parametrize("kind,d,q", [("sp", 3, 2), ("o", 3, 3), ("o+", 3, 2), ("o-", 3, 2)])
def test_standard_maximal_and_hyperplanes(kind, d, q):
    S = polar_space(kind, d, q)
    U = S.standard_maximal_subspace()
    assert U.dim == d and S.is_totally_isotropic(U)
    assert S.perp(U) == U or kind == "o" or kind == "o-"
    hs = S.hyperplanes_of(U)
    assert len(hs) == (q**d - 1) // (q - 1)
    sets = [tuple(S.points_of(H).tolist()) for H in hs]
    assert sets == sorted(sets) and len(set(sets)) == len(sets)
    assert all(len(s) == (q**(d - 1) - 1) // (q - 1) for s in sets)


def test_parabolic_perp_of_generator():
    S = polar_space("o", 3, 3)
    U = S.standard_maximal_subspace()
    P = S.perp(U)
    assert P.dim == S.n - U.dim
    assert all(S.contains(P, v) for v in U.basis)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["sp", "o", "o+", "o-"]), st.sampled_from([2, 3]), st.data())
def test_forms_are_reflexive(kind, q, data):
    S = polar_space(kind, 2, q)
    F = S.field
    x = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=S.n, max_size=S.n)))
    y = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=S.n, max_size=S.n)))
    bxy = int(S.bilinear(x[None], y[None])[0, 0])
    byx = int(S.bilinear(y[None], x[None])[0, 0])
    if kind == "sp":
        assert bxy == int(F.neg(byx))
        assert int(S.bilinear(x[None], x[None])[0, 0]) == 0
    else:
        assert bxy == byx
        # polarization: Q(x+y) = Q(x) + Q(y) + B(x,y)
        qs = S.quadratic(np.array([x, y, F.add(x, y)]))
        assert int(qs[2]) == int(F.add(F.add(qs[0], qs[1]), bxy))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_perp_is_orthogonal_complement(seed):
    S = polar_space("sp", 3, 3)
    rng = np.random.default_rng(seed)
    pts = rng.choice(len(S.points), size=rng.integers(1, 4), replace=False)
    W = S.span_points(pts)
    P = S.perp(W)
    assert W.dim + P.dim == S.n
    assert not np.any(S.bilinear(np.array(W.basis), np.array(P.basis)))


def test_line_types_on_parabolic_quadric():
    S = FormedSpace.parabolic(GF(3), 5)
    ns = S.nonsingular_points[:6]
    kinds = {S.line_quadric_meet(int(a), int(b)) for a, b in itertools.combinations(ns, 2)}
    assert kinds <= {"tangent", "secant", "exterior", "contained"}
    iso = S.isotropic_points
    assert S.line_quadric_meet(int(iso[0]), int(iso[1])) in {"contained", "secant"}


def test_point_types_split_nonsingular_points():
    S = FormedSpace.parabolic(GF(5), 5)
    t = S.point_types(S.nonsingular_points)
    # NO^-_5(5) has 300 vertices and NO^+_5(5) has 325
    assert (np.count_nonzero(t == -1), np.count_nonzero(t == 1)) == (300, 325)


def test_json_round_trip():
    S = polar_space("o-", 2, 3)
    T = FormedSpace.from_json(S.to_json())
    assert T.kind == S.kind and np.array_equal(T.gram, S.gram)
    assert np.array_equal(T.isotropic_points, S.isotropic_points)
