from collections import Counter

import numpy as np
import pytest

import oracles as o
from srg4v import families as fam
from srg4v.field import GF
from srg4v.graph import Graph, abc_params, check_srg, four_vertex_check, subconstituent
from srg4v.symmetry import automorphism_group, is_isomorphic


@pytest.mark.parametrize("kind,d,q", [("sp", 2, 2), ("sp", 2, 3), ("o", 2, 3), ("o+", 2, 3),
                                      ("o-", 2, 2), ("o+", 3, 2)])
def test_small_polar_graphs_against_naive_count(kind, d, q):
    S = fam.polar_space(kind, d, q)
    g = fam.polar_collinearity_graph(S)
    assert o.naive_srg(g.adj) == fam.polar_params(S)


@pytest.mark.parametrize("kind,d,q,want", [
    ("sp", 3, 2, (63, 30, 13, 15)), ("sp", 3, 3, (364, 120, 38, 40)),
    ("o", 3, 3, (364, 120, 38, 40)), ("sp", 4, 2, (255, 126, 61, 63)),
    ("o-", 3, 2, (119, 54, 21, 27)), ("o+", 4, 2, (135, 70, 37, 35)),
])
def test_polar_parameters(kind, d, q, want):
    S = fam.polar_space(kind, d, q)
    assert fam.polar_params(S) == want
    assert check_srg(fam.polar_collinearity_graph(S)).tuple == want


def test_polar_rank3_graphs_satisfy_four_vertex_condition():
    for kind, d, q in [("sp", 3, 2), ("o-", 2, 3), ("o+", 3, 2)]:
        assert four_vertex_check(fam.polar_collinearity_graph(fam.polar_space(kind, d, q))).satisfied


@pytest.mark.parametrize("m,q,eps", [(2, 3, 1), (2, 3, -1), (2, 5, 1), (2, 5, -1)])
def test_no_graphs(m, q, eps):
    g = fam.no_graph(m, q, eps)
    assert check_srg(g).tuple == fam.no_params(m, q, eps)
    rep = four_vertex_check(g)
    assert rep.mu_prime == fam.no_mu_valency(m, q, eps)


def test_no_graph_needs_odd_q():
    with pytest.raises(ValueError):
        fam.no_graph(2, 4, 1)


def test_no_tangent_rule_matches_line_geometry():
    space = fam.polar_space("o", 2, 3)
    verts = fam.no_vertices(space, 1)
    g = fam.no_graph(2, 3, 1, space)
    rng = np.random.default_rng(3)
    for _ in range(60):
        i, j = rng.choice(len(verts), 2, replace=False)
        tangent = space.line_quadric_meet(int(verts[i]), int(verts[j])) == "tangent"
        assert g.adj[i, j] == tangent


def test_disjoint_planes_q2():
    g = fam.sp6_disjoint_planes_graph(2)
    assert check_srg(g).tuple == (135, 64, 28, 32)
    db = fam.delta_bar(2, g)
    assert check_srg(db).tuple == (64, 35, 18, 20)
    assert fam.delta_bar_params(2) == (64, 35, 18, 20)


def test_hyperoval_q4():
    g = fam.hyperoval_graph(4)
    assert check_srg(g).tuple == fam.hyperoval_params(4) == (64, 18, 2, 6)
    with pytest.raises(ValueError):
        fam.hyperoval_graph(9)


def test_regular_hyperoval_has_no_three_collinear():
    F = GF(2, 3)
    O = fam.regular_hyperoval(F)
    assert len(O) == 10
    from itertools import combinations
    for a, b, c in combinations(range(10), 3):
        M = [O[a].tolist(), O[b].tolist(), O[c].tolist()]
        det = 0
        for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                           ((0, 2, 1), 1), ((2, 1, 0), 1), ((1, 0, 2), 1)):
            det = F.add(det, F.mul(F.mul(M[0][perm[0]], M[1][perm[1]]), M[2][perm[2]]))
        assert det != 0


def test_cyclotomic_paley():
    F = GF(13)
    g = fam.cyclotomic_graph(F, 2, [0])
    assert o.naive_srg(g.adj) == (13, 6, 2, 3)
    assert np.array_equal(g.adj, o.paley(13))


def test_cyclotomic_report_agrees_with_dense_check():
    F = GF(11, 2)
    rep = fam.cyclotomic_report(F, 6, [0, 1, 2])
    dense = four_vertex_check(fam.cyclotomic_graph(F, 6, [0, 1, 2]))
    assert rep.srg.tuple == dense.srg.tuple
    assert (rep.fourvc.alpha, rep.fourvc.beta) == (dense.alpha, dense.beta) == (200, 206)


def test_ivanov_small_members():
    assert check_srg(fam.ivanov_gamma(2)).tuple == (16, 6, 2, 2)
    assert check_srg(fam.ivanov_gamma(3)).tuple == abc_params(1, 4)[0].tuple
    assert check_srg(fam.ivanov_sigma(3)).tuple == (64, 36, 20, 20)
    s = fam.sigma_sets(3)
    assert s["S"].sum() == 2**2 - 1


def test_ivanov_tee_and_upsilon_parameters():
    A, B, C = abc_params(-1, 8)
    assert check_srg(fam.ivanov_tee(4)).tuple == B.tuple
    assert check_srg(fam.ivanov_upsilon(4)).tuple == C.tuple


def test_construction_errors_are_loud():
    g = Graph(o.petersen())
    with pytest.raises(fam.ConstructionError):
        fam._expect(g, (10, 3, 1, 1), "petersen")


def _lambda_histograms(g):
    """Degree multiset of every lambda-graph, keyed by edge."""
    a = g.adj
    out = {}
    for x, y in zip(*np.nonzero(np.triu(a))):
        c = np.flatnonzero(a[x] & a[y])
        degs, counts = np.unique(a[np.ix_(c, c)].sum(axis=1), return_counts=True)
        out[(int(x), int(y))] = dict(zip(degs.tolist(), counts.tolist()))
    return out


@pytest.mark.parametrize("m", [4, 5])
def test_tee_lambda_graph_fine_structure(m):
    sigma = fam.ivanov_sigma(m)
    tee = fam.ivanov_tee(m, sigma)
    verts = sigma.neighbors(0)
    Q = fam.sigma_sets(m)["Q"]
    lam = check_srg(tee).lam
    plain = {0: 1, 2 ** (2 * m - 4): lam - 1}
    in_line = Counter()
    in_line[2 ** (2 * m - 3) - 2 ** m] += 1
    in_line[2 ** (2 * m - 4) - 2 ** m] += 2 ** (m - 3) - 1
    in_line[2 ** (2 * m - 4)] += 2 ** (2 * m - 3) + 2 ** (m - 3)
    in_line = {k: v for k, v in in_line.items() if v}
    seen = set()
    for (x, y), hist in _lambda_histograms(tee).items():
        u, w = int(verts[x]), int(verts[y])
        line_in_q = Q[u] and Q[w] and Q[u ^ w]
        assert hist == (in_line if line_in_q else plain)
        seen.add(line_in_q)
    assert seen == {True, False}


@pytest.mark.parametrize("m", [3, 4])
def test_upsilon_local_graph_at_s(m):
    sigma = fam.ivanov_sigma(m)
    up = fam.ivanov_upsilon(m, sigma)
    verts = fam.upsilon_vertices(m, sigma)
    S = fam.sigma_sets(m)["S"]
    small = fam.ivanov_sigma(m - 1)
    for i in np.flatnonzero(S[verts]):
        assert is_isomorphic(subconstituent(up, int(i), "first"), small)


def test_disjoint_planes_against_second_subconstituent():
    # same parameters; the two graphs are told apart by their groups
    a = fam.sp6_disjoint_planes_graph(2)
    b = subconstituent(fam.ivanov_gamma(4), 0, "second")
    assert check_srg(a).tuple == check_srg(b).tuple == (135, 64, 28, 32)
    assert not is_isomorphic(a, b)
    assert automorphism_group(a).rank == 3 and not automorphism_group(b).transitive
