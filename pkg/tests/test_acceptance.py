"""Acceptance checks.  Each test prints one ``criterion N: PASS/FAIL`` line.

Expected values come from three places: closed formulas evaluated here
(independent of the library code paths), brute force oracles in
``oracles.py``, and published tables copied as literals.
"""

import itertools
import math
import time
from collections import Counter

import numpy as np
import pytest

import oracles as o
from acceptance_log import record
from srg4v import families as fam
from srg4v.cli import cyclotomic_field
from srg4v.field import GF
from srg4v.graph import Graph, check_srg, four_vertex_check, subconstituent
from srg4v.switching import (SwitchingContext, SwitchingPlan, build_gamma_phi, count_double_cosets,
                             double_coset_labels, enumerate_double_coset_reps, pgl_on_hyperplanes,
                             random_permutations, same_double_coset, sample_classes,
                             singer_normalizer_phis)
from srg4v.symmetry import automorphism_group, canonical_form, is_isomorphic


def sp_switch_alpha_beta(d, q):
    """Common-neighbourhood edge counts of the symplectic switched graphs."""
    lam = fam.polar_params(fam.polar_space("sp", d, q))[2]
    alpha = math.comb(lam, 2) - q ** (2 * d - 1) * (q ** (2 * d - 4) - 1) // (2 * (q - 1))
    beta = q * (q ** (2 * d - 2) - 1) * (q ** (2 * d - 4) - 1) // (2 * (q - 1) ** 2)
    return alpha, beta


def sims_holds(v, k, lam, mu, alpha, beta):
    """Fix x and count pairs (y, edge zw) with z, w in the common neighbourhood of x and y."""
    return k * math.comb(lam, 2) == k * alpha + (v - k - 1) * beta


def naive_mu_degrees(adj, pairs):
    """Set of vertex degrees over all given lambda/mu graphs, computed from scratch."""
    out = set()
    for x, y in pairs:
        c = np.flatnonzero(adj[x] & adj[y])
        out |= set(adj[np.ix_(c, c)].sum(axis=1).tolist())
    return out


def prime_power_orders(limit):
    out = []
    for q in range(2, limit + 1):
        p = next(p for p in range(2, q + 1) if q % p == 0)
        while q % p == 0:
            q //= p
        out.append(q == 1)
    return [q for q, flag in zip(range(2, limit + 1), out) if flag]


def nonadjacent_pairs(adj):
    a = adj | np.eye(len(adj), dtype=bool)
    x, y = np.nonzero(np.triu(~a))
    return list(zip(x.tolist(), y.tolist()))


def adjacent_pairs(adj):
    x, y = np.nonzero(np.triu(adj))
    return list(zip(x.tolist(), y.tolist()))


# -- 1 ------------------------------------------------------------------------------------------

def test_criterion_1_sp6_2():
    t = time.perf_counter()
    ctx = SwitchingContext.standard("sp", 3, 2)
    g = build_gamma_phi(SwitchingPlan.permutation(ctx, range(7)))
    rep = four_vertex_check(g)
    dt = time.perf_counter() - t
    want_ab = sp_switch_alpha_beta(3, 2)
    naive = o.naive_four_vertex(g.adj)
    ok = (rep.srg.tuple == (63, 30, 13, 15) == o.naive_srg(g.adj)
          and (rep.alpha, rep.beta) == want_ab == (30, 45) == naive
          and rep.sims_identity and sims_holds(63, 30, 13, 15, 30, 45) and dt < 1.0)
    record(1, ok, f"Sp6(2) Gamma_0 {rep.srg.tuple} alpha,beta={rep.alpha},{rep.beta} "
                  f"Sims={rep.sims_identity} ({dt:.2f}s)")
    assert ok


# -- 2 ------------------------------------------------------------------------------------------

def test_criterion_2_exhaustive_32():
    t = time.perf_counter()
    ctx = SwitchingContext.standard("sp", 3, 2)
    G = pgl_on_hyperplanes(3, 2, ctx)
    labels = double_coset_labels(7, G.generators)
    good = 0
    forms: dict[bytes, set[int]] = {}
    first: dict[bytes, tuple] = {}
    for phi in itertools.permutations(range(7)):
        g = build_gamma_phi(SwitchingPlan.permutation(ctx, phi))
        rep = four_vertex_check(g)
        good += (rep.srg is not None and rep.srg.tuple == (63, 30, 13, 15)
                 and rep.satisfied and (rep.alpha, rep.beta) == (30, 45))
        cf = canonical_form(g)
        forms.setdefault(cf, set()).add(labels[phi])
        first.setdefault(cf, phi)
    rank3 = 0
    others_ok = True
    orders = []
    for cf, phi in first.items():
        A = automorphism_group(build_gamma_phi(SwitchingPlan.permutation(ctx, phi)))
        orders.append(A.order)
        if A.rank == 3:
            rank3 += 1
        elif A.transitive or A.order % 64:
            others_ok = False
    dt = time.perf_counter() - t
    bijective = all(len(s) == 1 for s in forms.values()) and len(set().union(*forms.values())) == 4
    ok = good == 5040 and len(forms) == 4 and bijective and rank3 == 1 and others_ok and dt < 600
    record(2, ok, f"(3,2): {good}/5040 pass 4VC, {len(forms)} classes, rank-3 classes {rank3}, "
                  f"|Aut| {sorted(orders)} ({dt:.0f}s)")
    assert ok


# -- 3 ------------------------------------------------------------------------------------------

def test_criterion_3_double_cosets():
    t = time.perf_counter()
    got = {}
    for d, q, n in [(3, 2, 7), (3, 3, 13), (4, 2, 15)]:
        G = pgl_on_hyperplanes(d, q)
        # |PGL(d, q)|, which is all of PGammaL for prime q
        order = math.prod(q**d - q**i for i in range(d)) // (q - 1)
        assert G.order == order
        got[(d, q)] = count_double_cosets(n, G)
    # independent check for the smallest case: orbit enumeration with generators only
    brute = len(enumerate_double_coset_reps(7, pgl_on_hyperplanes(3, 2).generators))
    dt = time.perf_counter() - t
    ok = got == {(3, 2): 4, (3, 3): 252, (4, 2): 3374} and brute == 4 and dt < 60
    record(3, ok, f"double cosets {list(got.values())}, (3,2) by enumeration {brute} ({dt:.1f}s)")
    assert ok


# -- 4 ------------------------------------------------------------------------------------------

@pytest.mark.parametrize("eps,srg,ab,mu_val", [
    (-1, (300, 104, 28, 40), (78, 160), 8),
    (1, (325, 144, 68, 60), (1153, 900), 30),
])
def test_criterion_4_no5(eps, srg, ab, mu_val):
    t = time.perf_counter()
    g = fam.no_graph(2, 5, eps)
    rep = four_vertex_check(g)
    dt = time.perf_counter() - t
    rng = np.random.default_rng(4)
    pairs = nonadjacent_pairs(g.adj)
    sample = [pairs[i] for i in rng.choice(len(pairs), 300, replace=False)]
    naive = naive_mu_degrees(g.adj, sample)
    ok = (rep.srg.tuple == srg and rep.satisfied and (rep.alpha, rep.beta) == ab
          and rep.mu_prime == mu_val and naive == {mu_val} and dt < 30)
    sign = "+" if eps > 0 else "-"
    record(4, ok, f"NO5{sign}(5) {rep.srg.tuple} alpha,beta={rep.alpha},{rep.beta} "
                  f"mu'={rep.mu_prime} ({dt:.1f}s)")
    assert ok


# -- 5 ------------------------------------------------------------------------------------------

@pytest.mark.parametrize("m,q,eps", [(2, 3, 1), (2, 3, -1), (2, 5, 1), (2, 5, -1),
                                     (3, 3, 1), (3, 3, -1)])
def test_criterion_5_mu_valency(m, q, eps):
    want = 4 * q ** (2 * m - 3) + 3 * eps * q ** (m - 1) - 4 * eps * q ** (m - 2) - 1
    g = fam.no_graph(m, q, eps)
    degrees = naive_mu_degrees(g.adj, nonadjacent_pairs(g.adj))
    ok = degrees == {want}
    record(5, ok, f"mu-graph valency (m,q,eps)=({m},{q},{eps:+d}): degrees {sorted(degrees)}, "
                  f"formula {want}")
    assert ok


# -- 6 ------------------------------------------------------------------------------------------

def test_criterion_6_disjoint_planes():
    t = time.perf_counter()
    g2 = fam.sp6_disjoint_planes_graph(2)
    db = fam.delta_bar(2, g2)
    s2, sdb = check_srg(g2), check_srg(db)
    g3 = fam.sp6_disjoint_planes_graph(3)
    r3 = four_vertex_check(g3)
    dt = time.perf_counter() - t
    ok = (s2.tuple == (135, 64, 28, 32) and sdb.tuple == (64, 35, 18, 20)
          and r3.srg.tuple == (1120, 729, 468, 486) and r3.satisfied
          and (r3.alpha, r3.beta) == (69498, 74358)
          and sims_holds(*r3.srg.tuple, r3.alpha, r3.beta) and dt < 600)
    record(6, ok, f"disjoint planes q=2 {s2.tuple}, Delta-bar {sdb.tuple}, q=3 {r3.srg.tuple} "
                  f"alpha,beta={r3.alpha},{r3.beta} ({dt:.1f}s)")
    assert ok


# -- 7 ------------------------------------------------------------------------------------------

def test_criterion_7_hyperoval():
    t = time.perf_counter()
    g = fam.hyperoval_graph(8)
    rep = four_vertex_check(g)
    local = {check_srg(subconstituent(g, x, "first")).tuple for x in range(g.v)}
    dt = time.perf_counter() - t
    ok = (rep.srg.tuple == (512, 196, 60, 84) and rep.satisfied
          and (rep.alpha, rep.beta) == (420, 840) and local == {(196, 60, 14, 20)} and dt < 120)
    record(7, ok, f"hyperoval q=8 {rep.srg.tuple} alpha,beta={rep.alpha},{rep.beta} "
                  f"local graphs {sorted(local)} ({dt:.1f}s)")
    assert ok


# -- 8 ------------------------------------------------------------------------------------------

@pytest.mark.parametrize("q,e,J,poly,ab", [
    (121, 6, (0, 1, 2), None, (200, 206)),
    (529, 8, (0, 1, 2, 3), (-4, -1, 1), (4215, 4300)),
    (1849, 4, (0,), None, (2980, 1845)),
])
def test_criterion_8_cyclotomic(q, e, J, poly, ab):
    t = time.perf_counter()
    F = cyclotomic_field(q, eta_poly=poly)
    if poly is not None:
        x = F.eta
        assert F.mul(x, x) == F.add(x, 4)
    fast = fam.cyclotomic_report(F, e, J)
    # full pair-by-pair count on the dense graph as the independent check
    full = four_vertex_check(fam.cyclotomic_graph(F, e, J))
    dt = time.perf_counter() - t
    ok = (fast.fourvc.satisfied and full.satisfied
          and (fast.fourvc.alpha, fast.fourvc.beta) == (full.alpha, full.beta) == ab
          and dt < 300)
    record(8, ok, f"cyclotomic q={q} e={e} J={list(J)}: alpha,beta={full.alpha},{full.beta} "
                  f"({dt:.1f}s)")
    assert ok


# -- 9 ------------------------------------------------------------------------------------------

def test_criterion_9_ivanov():
    t = time.perf_counter()
    checks = {}
    g = fam.ivanov_gamma(4)
    r = four_vertex_check(g)
    checks["Gamma(4)"] = (r.srg.tuple, r.alpha, r.beta) == ((256, 120, 56, 56), 784, 672)
    r1 = four_vertex_check(subconstituent(g, 0, "first"))
    r2 = four_vertex_check(subconstituent(g, 0, "second"))
    checks["Gamma1"] = (r1.srg.tuple, r1.alpha, r1.beta) == ((120, 56, 28, 24), 216, 144)
    checks["Gamma2"] = (r2.srg.tuple, r2.alpha, r2.beta) == ((135, 64, 28, 32), 168, 192)
    checks["Gamma(4) = Gamma_0"] = is_isomorphic(g, fam.ivanov_gamma0(seed=3))

    s3 = fam.ivanov_sigma(3)
    checks["Sigma(3)"] = check_srg(s3).tuple == (64, 36, 20, 20)
    s4 = fam.ivanov_sigma(4)
    checks["Sigma(4) 4VC"] = four_vertex_check(s4).satisfied

    m = 4
    alpha = 2 ** (2 * m - 5) * (2 ** (2 * m - 3) + 2 ** (m - 2) - 1)
    beta = 2 ** (2 * m - 4) * (2 ** (m - 2) + 1) ** 2
    rt = four_vertex_check(fam.ivanov_tee(4, s4))
    checks["T(4)"] = rt.satisfied and (rt.alpha, rt.beta) == (alpha, beta) == (280, 400)

    val = 2 ** (m - 2) * (2 ** (m - 2) + 1)
    up = fam.ivanov_upsilon(4, s4)
    degs = naive_mu_degrees(up.adj, adjacent_pairs(up.adj)) | naive_mu_degrees(
        up.adj, nonadjacent_pairs(up.adj))
    checks["Upsilon(4) lambda/mu graphs"] = degs == {val} == {20}

    verts = fam.upsilon_vertices(4, s4)
    S = fam.sigma_sets(4)["S"]
    in_s = np.flatnonzero(S[verts])
    checks["Upsilon(4) local at S"] = all(
        is_isomorphic(subconstituent(up, int(i), "first"), s3) for i in in_s[:3])

    s5 = fam.ivanov_sigma(5)
    ot = sorted(automorphism_group(fam.ivanov_tee(5, s5)).orbit_lengths)
    ou = sorted(automorphism_group(fam.ivanov_upsilon(5, s5)).orbit_lengths)
    m = 5
    checks["T(5) orbits"] = ot == sorted([3 * 2 ** (m - 1), 2 ** (2 * m - 1) - 2 ** m]) == [48, 480]
    checks["Upsilon(5) orbits"] = ou == [15, 480]
    dt = time.perf_counter() - t
    ok = all(checks.values()) and dt < 300
    bad = [k for k, v in checks.items() if not v]
    record(9, ok, f"Ivanov suite: {len(checks) - len(bad)}/{len(checks)} items, "
                  f"T(5) {ot}, Upsilon(5) {ou}{' failed ' + str(bad) if bad else ''} ({dt:.1f}s)")
    assert ok


# -- 10 -----------------------------------------------------------------------------------------

def _constructed_graphs():
    ctx = SwitchingContext.standard("sp", 3, 2)
    g0 = fam.ivanov_gamma(4)
    yield "Sp6(2) Gamma_phi", build_gamma_phi(SwitchingPlan.permutation(ctx, (1, 0, 2, 3, 4, 5, 6)))
    yield "Sp6(2) Gamma_0", build_gamma_phi(SwitchingPlan.permutation(ctx, range(7)))
    yield "NO5-(5)", fam.no_graph(2, 5, -1)
    yield "NO5+(5)", fam.no_graph(2, 5, 1)
    yield "NO5-(3)", fam.no_graph(2, 3, -1)
    yield "disjoint planes q=2", fam.sp6_disjoint_planes_graph(2)
    yield "Delta-bar q=2", fam.delta_bar(2)
    yield "hyperoval q=4", fam.hyperoval_graph(4)
    yield "hyperoval q=8", fam.hyperoval_graph(8)
    yield "cyclotomic 121", fam.cyclotomic_graph(GF(11, 2), 6, (0, 1, 2))
    yield "Gamma(4)", g0
    yield "Gamma1", subconstituent(g0, 0, "first")
    yield "Gamma2", subconstituent(g0, 0, "second")
    yield "Sigma(3)", fam.ivanov_sigma(3)
    yield "T(4)", fam.ivanov_tee(4)
    yield "Upsilon(4)", fam.ivanov_upsilon(4)


def test_criterion_10_properties():
    t = time.perf_counter()
    checks = {}
    agree = []
    for name, g in _constructed_graphs():
        a, b = four_vertex_check(g), four_vertex_check(g.complement())
        agree.append(bool(a.satisfied) == bool(b.satisfied))
    checks["4VC iff complement 4VC"] = all(agree) and len(agree) == 16

    corpus = o.oracle_corpus(500, seed=10)
    same = 0
    for adj in corpus:
        try:
            got = check_srg(Graph(adj))
        except ValueError:      # complete or edgeless
            got = None
        same += (None if got is None else got.tuple) == o.naive_srg(adj)
    checks["check_srg vs naive (500)"] = same == 500

    rng = np.random.default_rng(10)
    aut_ok = 0
    for i in range(40):
        v = int(rng.integers(2, 9))
        adj = o.random_graph(rng, v, rng.uniform(0.2, 0.8))
        aut_ok += automorphism_group(Graph(adj)).order == o.brute_aut_order(adj)
    checks["|Aut| vs brute force (40, v<=8)"] = aut_ok == 40

    base = fam.ivanov_sigma(3)
    cf = canonical_form(base)
    checks["canonical form, 100 relabelings"] = all(
        canonical_form(Graph(o.random_relabel(base.adj, rng))) == cf for _ in range(100))

    orders = prime_power_orders(256)
    checks[f"field axioms ({len(orders)} orders <= 256)"] = all(
        o.field_axioms_hold(GF.of_order(q)) for q in orders)
    dt = time.perf_counter() - t
    ok = all(checks.values()) and dt < 120
    bad = [k for k, v in checks.items() if not v]
    record(10, ok, f"property suites: {', '.join(checks)}"
                   f"{'; failed ' + str(bad) if bad else ''} ({dt:.1f}s)")
    assert ok


# -- 11 (stretch, reported only) ------------------------------------------------------------------

HIST_33 = {1: 172, 2: 26, 3: 29, 4: 6, 6: 3, 8: 2, 12: 2, 16: 2, 18: 1, 24: 1, 39: 3, 54: 1,
           72: 2, 144: 1}
ORBITS_33 = {39: [13, 351], 72: [1, 12, 108, 243], 144: [1, 12, 108, 243]}
HIST_42 = {1: 3148, 2: 85, 3: 40, 4: 24, 5: 4, 6: 10, 7: 6, 8: 26, 12: 1, 16: 4, 18: 1, 21: 2,
           24: 11, 32: 2, 56: 2, 60: 1, 96: 2, 192: 2, 288: 1, 1344: 1}
ORBITS_42 = {12: [3, 12, 48, 192], 18: [6, 9, 96, 144], 24: [3, 12, 48, 192],
             56: [1, 14, 112, 128], 60: [15, 240], 288: [3, 12, 48, 192],
             1344: [7, 8, 16, 224]}


def _sampled(kind, d, q, n_random):
    ctx = SwitchingContext.standard(kind, d, q)
    G = pgl_on_hyperplanes(d, q, ctx)
    phis = singer_normalizer_phis(ctx)
    phis += random_permutations(ctx.n_hyperplanes, n_random, seed=11)
    ident = tuple(range(ctx.n_hyperplanes))
    return [c for c in sample_classes(ctx, phis, G) if not same_double_coset(G, c.phi, ident)]


def _consistent(classes, hist, orbits):
    obs = Counter(c.ratio for c in classes)
    ok = all(r in hist and n <= hist[r] for r, n in obs.items())
    for c in classes:
        if len(c.orbit_lengths) < 6:
            ok &= sorted(c.orbit_lengths) == orbits.get(c.ratio)
    return ok, dict(sorted(obs.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)))


def test_criterion_11_stretch():
    t = time.perf_counter()
    o7 = _sampled("o", 3, 3, 6)
    special = [c for c in o7 if c.four_vertex]
    o7_ok = len(special) <= 3 and all(
        sorted(c.orbit_lengths) == [13, 351] and c.aut_order == 56862 for c in special)
    sp33 = _sampled("sp", 3, 3, 6)
    ok33, obs33 = _consistent(sp33, HIST_33, ORBITS_33)
    ok33 &= all(c.four_vertex for c in sp33)
    sp42 = _sampled("sp", 4, 2, 6)
    ok42, obs42 = _consistent(sp42, HIST_42, ORBITS_42)
    dt = time.perf_counter() - t
    ok = o7_ok and ok33 and ok42
    record(11, ok, f"stretch: O7(3) 4VC non-rank-3 classes found {len(special)}/3 expected "
                   f"(|Aut| {sorted({c.aut_order for c in special})}); "
                   f"Sp6(3) |G|/N observed {obs33}; Sp8(2) |G|/N observed {obs42} ({dt:.0f}s)")
    if not ok:
        pytest.xfail("stretch criterion is reported, not enforced")
