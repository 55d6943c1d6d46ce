"""Command line interface: ``srg4v build | switch | doublecosets | check | aut | survey``.

Exit codes: 0 when everything checked holds, 1 when a property fails or a
survey row differs from its expected value, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import families as fam
from .field import GF, prime_power
from .graph import (Graph, check_srg, decode_graph6, encode_graph6, four_vertex_check,
                    params_to_json, subconstituent)
from .switching import (SwitchingContext, SwitchingPlan, build_gamma_phi,
                        count_double_cosets, double_coset_labels, emptying_analysis,
                        enumerate_double_coset_reps, pgl_on_hyperplanes)

SCHEMA = 1


class UsageError(Exception):
    pass


# -- expected values --------------------------------------------------------------------
# (v, k, lambda, mu, alpha, beta) as published; lambda'/mu' where the
# lambda- and mu-graphs are regular.

INTRO_TABLE = [
    {"name": "NO5-(5)", "family": "no", "params": {"m": 2, "q": 5, "eps": -1},
     "expect": (300, 104, 28, 40, 78, 160), "mu_prime": 8},
    {"name": "NO5+(5)", "family": "no", "params": {"m": 2, "q": 5, "eps": 1},
     "expect": (325, 144, 68, 60, 1153, 900), "mu_prime": 30},
    {"name": "dual hyperoval q=8", "family": "hyperoval", "params": {"q": 8},
     "expect": (512, 196, 60, 84, 420, 840), "lambda_prime": 14, "mu_prime": 20},
    {"name": "disjoint t.i. planes q=3", "family": "disjoint-planes", "params": {"q": 3},
     "expect": (1120, 729, 468, 486, 69498, 74358), "lambda_prime": 297, "mu_prime": 306},
    {"name": "power difference set 43^2", "family": "cyclotomic",
     "params": {"q": 1849, "e": 4, "J": [0]}, "expect": (1849, 462, 131, 110, 2980, 1845)},
]

CYCLOTOMIC_TABLE = [
    # q, e, J, eta polynomial (low degree first) or None, alpha, beta, big
    (1849, 4, (0,), None, 2980, 1845, False),
    (146689, 4, (0,), None, 11353825, 10662960, True),
    (121, 6, (0, 1, 2), None, 200, 206, False),
    (625, 6, (0, 1, 2), None, 5913, 6022, True),
    (5041, 6, (0, 1, 2), None, 395641, 396270, True),
    (529, 8, (0, 1, 2, 3), (-4, -1, 1), 4215, 4300, False),
]

IVANOV_TABLE = [
    # name, (v, k, lambda, mu, alpha, beta), |G|, orbit lengths, rank
    ("Gamma0", (256, 120, 56, 56, 784, 672), 2**20 * 3**2 * 5 * 7, [256], 4),
    ("Gamma1", (120, 56, 28, 24, 216, 144), 2**12 * 3**2 * 5 * 7, [120], 4),
    ("Gamma2", (135, 64, 28, 32, 168, 192), 2**12 * 3**2 * 5 * 7, [15, 120], None),
]

SWITCHING_32 = {"graphs": 5040, "srg": (63, 30, 13, 15), "alpha": 30, "beta": 45,
                "classes": 4, "rank3": 1, "N": 64}


# -- family construction -------------------------------------------------------------------

def _ints(x) -> list[int]:
    if isinstance(x, str):
        return [int(t) for t in x.replace(" ", "").split(",") if t]
    if isinstance(x, int):
        return [x]
    return [int(t) for t in x]


def cyclotomic_field(q: int, eta=None, eta_poly=None) -> GF:
    """GF(q) with eta given as an element index or as a root of ``eta_poly``."""
    p, k = prime_power(q)
    if eta_poly is not None:
        F = GF(p, k)
        for r in F.roots(_ints(eta_poly)):
            try:
                return GF(p, k, eta=r)
            except ValueError:
                continue
        raise UsageError(f"no primitive root of {eta_poly} in GF({q})")
    return GF(p, k, eta=None if eta is None else int(eta))


def build_family(name: str, params: dict) -> Graph:
    p = dict(params)
    try:
        if name == "polar":
            return fam.polar_collinearity_graph(
                fam.polar_space(p.get("form", "sp"), int(p["d"]), int(p["q"])))
        if name == "no":
            return fam.no_graph(int(p["m"]), int(p["q"]), int(p["eps"]))
        if name == "disjoint-planes":
            return fam.sp6_disjoint_planes_graph(int(p["q"]))
        if name == "delta-bar":
            return fam.delta_bar(int(p["q"]))
        if name == "hyperoval":
            return fam.hyperoval_graph(int(p["q"]))
        if name == "cyclotomic":
            F = cyclotomic_field(int(p["q"]), p.get("eta"), p.get("eta_poly"))
            if F.q > fam.DENSE_LIMIT:
                raise UsageError(f"q = {F.q} is too large for an explicit graph; "
                                 "use `survey cyclotomic --big`")
            return fam.cyclotomic_graph(F, int(p["e"]), _ints(p["J"]))
        if name == "ivanov-gamma":
            return fam.ivanov_gamma(int(p["m"]))
        if name == "ivanov-gamma0":
            return fam.ivanov_gamma0(int(p.get("seed", 0)))
        if name == "ivanov-sigma":
            return fam.ivanov_sigma(int(p["m"]))
        if name == "ivanov-tee":
            return fam.ivanov_tee(int(p["m"]))
        if name == "ivanov-upsilon":
            return fam.ivanov_upsilon(int(p["m"]))
    except KeyError as exc:
        raise UsageError(f"family {name!r} needs parameter {exc}") from None
    raise UsageError(f"unknown family {name!r}; choose from {', '.join(FAMILY_NAMES)}")


FAMILY_NAMES = ["polar", "no", "disjoint-planes", "delta-bar", "hyperoval", "cyclotomic",
                "ivanov-gamma", "ivanov-gamma0", "ivanov-sigma", "ivanov-tee", "ivanov-upsilon"]


# -- reports -----------------------------------------------------------------------------------

def graph_report(g: Graph, threads: int | None = None, aut: bool = False) -> dict:
    srg = check_srg(g)
    out: dict = {"v": g.v, "edges": g.num_edges, "digest": hashlib.sha256(encode_graph6(g)).hexdigest()[:16]}
    if srg is None:
        out["srg"] = None
        return out
    out["srg"] = params_to_json(srg)
    rep = four_vertex_check(g, srg, threads)
    out["fourvc"] = rep.to_json()
    if aut:
        from .symmetry import automorphism_group
        A = automorphism_group(g)
        out["group"] = {"order": str(A.order), "orbit_lengths": A.orbit_lengths, "rank": A.rank}
    return out


def _emit(args, report: dict, text: str):
    report = {"schema": SCHEMA, "command": args.command, **report}
    if getattr(args, "timing", False):
        report["seconds"] = round(time.perf_counter() - args._t0, 3)
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        print(text)


def _summary(rep: dict) -> str:
    if rep.get("srg") is None:
        return f"v={rep['v']}: not strongly regular"
    s = rep["srg"]
    line = f"SRG({s['v']},{s['k']},{s['lam']},{s['mu']})"
    f = rep.get("fourvc")
    if f:
        if f["fourvc"]:
            line += f", 4-vertex condition holds with alpha={f['alpha']}, beta={f['beta']}"
        else:
            line += f", 4-vertex condition fails at pair {tuple(f['witness'])}"
        if f["lambda_prime"] is not None:
            line += f", lambda'={f['lambda_prime']}"
        if f["mu_prime"] is not None:
            line += f", mu'={f['mu_prime']}"
    if "group" in rep:
        gr = rep["group"]
        line += f"\n|Aut| = {gr['order']}, orbits {gr['orbit_lengths']}, rank {gr['rank']}"
    return line


def _read_graph(path: str) -> Graph:
    try:
        data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
        line = next((ln for ln in data.splitlines() if ln.strip()), b"")
        return decode_graph6(line)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read graph6 from {path}: {exc}") from None


def _write_graph(g: Graph, path: str | None):
    data = encode_graph6(g) + b"\n"
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


# -- commands ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    params = json.loads(args.params) if args.params else {}
    for key in ("form", "d", "q", "m", "eps", "e", "J", "eta", "seed"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.eta_poly is not None:
        params["eta_poly"] = args.eta_poly
    if args.family == "cyclotomic" and int(params.get("q", 0)) > fam.DENSE_LIMIT:
        return _cyclotomic_only(args, params)
    g = build_family(args.family, params)
    if args.out:
        _write_graph(g, args.out)
    rep = graph_report(g, args.threads, args.aut)
    if args.family == "cyclotomic":
        F = cyclotomic_field(int(params["q"]), params.get("eta"), params.get("eta_poly"))
        rep["eta"] = F.eta
    rep.update({"family": args.family, "params": params})
    _emit(args, rep, _summary(rep))
    return 0 if rep["srg"] is not None else 1


def _cyclotomic_only(args, params) -> int:
    F = cyclotomic_field(int(params["q"]), params.get("eta"), params.get("eta_poly"))
    r = fam.cyclotomic_report(F, int(params["e"]), _ints(params["J"]))
    rep = {"family": "cyclotomic", "params": params, "v": F.q, "eta": F.eta,
           "srg": params_to_json(r.srg) if r.srg else None,
           "fourvc": r.fourvc.to_json() if r.fourvc else None}
    _emit(args, rep, _summary(rep))
    return 0 if r.srg is not None else 1


def cmd_switch(args) -> int:
    try:
        plan = SwitchingPlan.load(args.plan)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"bad plan {args.plan}: {exc}") from None
    g = build_gamma_phi(plan)
    if args.out:
        _write_graph(g, args.out)
    rep = graph_report(g, args.threads, args.aut)
    e = emptying_analysis(plan)
    rep["emptying"] = {"emptying": e.is_emptying, "dually_emptying": e.is_dually_emptying,
                       "emptying_vertices": [i for i, f in enumerate(e.emptying) if f],
                       "dually_emptying_vertices": [i for i, f in enumerate(e.dually) if f]}
    rep["phi"] = list(plan.phi)
    _emit(args, rep, _summary(rep) + f"\nemptying={e.is_emptying}, dually emptying={e.is_dually_emptying}")
    ok = rep["srg"] is not None and rep["fourvc"]["fourvc"]
    return 0 if ok else 1


def cmd_doublecosets(args) -> int:
    try:
        G = pgl_on_hyperplanes(args.d, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = G.degree
    rep = {"d": args.d, "q": args.q, "hyperplanes": n, "group_order": G.order,
           "double_cosets": count_double_cosets(n, G)}
    text = (f"PGammaL({args.d},{args.q}) of order {G.order} on {n} hyperplanes: "
            f"{rep['double_cosets']} double cosets in Sym({n})")
    if args.enumerate:
        if n > 8:
            raise UsageError("enumeration needs at most 8 hyperplanes")
        reps = enumerate_double_coset_reps(n, G.generators)
        rep["representatives"] = [list(r) for r in reps]
        text += "\n" + "\n".join(" ".join(map(str, r)) for r in reps)
    _emit(args, rep, text)
    return 0


def cmd_check(args) -> int:
    g = _read_graph(args.input)
    rep = graph_report(g, args.threads, args.aut)
    _emit(args, rep, _summary(rep))
    return 0 if rep["srg"] is not None else 1


def cmd_aut(args) -> int:
    from .symmetry import MAX_VERTICES, automorphism_group
    g = _read_graph(args.input)
    if g.v > MAX_VERTICES:
        raise UsageError(f"graph has {g.v} vertices, more than {MAX_VERTICES}")
    A = automorphism_group(g)
    rep = A.to_json()
    _emit(args, rep, f"|Aut| = {A.order}, orbits {A.orbit_lengths}, rank {A.rank}")
    return 0


# -- surveys ------------------------------------------------------------------------------------

def _row(name: str, got, want) -> dict:
    return {"row": name, "got": got, "expected": want, "ok": got == want}


def survey_intro(args) -> list[dict]:
    rows = []
    for entry in INTRO_TABLE:
        p = entry["params"]
        if entry["family"] == "cyclotomic":
            F = cyclotomic_field(p["q"])
            r = fam.cyclotomic_report(F, p["e"], p["J"])
            srg, f = r.srg, r.fourvc
        else:
            g = build_family(entry["family"], p)
            srg = check_srg(g)
            f = four_vertex_check(g, srg, args.threads)
        got = (*srg.tuple, f.alpha, f.beta) if f.satisfied else (*srg.tuple, None, None)
        rows.append(_row(entry["name"], list(got), list(entry["expect"])))
        for key in ("lambda_prime", "mu_prime"):
            if key in entry:
                rows.append(_row(f"{entry['name']} {key}", getattr(f, key), entry[key]))
    return rows


def survey_cyclotomic(args) -> list[dict]:
    rows = []
    for q, e, J, poly, alpha, beta, big in CYCLOTOMIC_TABLE:
        name = f"q={q} e={e} J={list(J)}"
        if big and not args.big:
            rows.append({"row": name, "skipped": "needs --big", "ok": True})
            continue
        F = cyclotomic_field(q, eta_poly=poly)
        r = fam.cyclotomic_report(F, e, J)
        got = [r.fourvc.alpha, r.fourvc.beta] if r.fourvc and r.fourvc.satisfied else None
        rows.append(_row(name, got, [alpha, beta]))
    return rows


def survey_ivanov(args) -> list[dict]:
    from .symmetry import automorphism_group
    g0 = fam.ivanov_gamma(4)
    graphs = {"Gamma0": g0, "Gamma1": subconstituent(g0, 0, "first"),
              "Gamma2": subconstituent(g0, 0, "second")}
    rows = []
    for name, want, order, orbs, rank in IVANOV_TABLE:
        g = graphs[name]
        srg = check_srg(g)
        f = four_vertex_check(g, srg, args.threads)
        A = automorphism_group(g)
        got = [*srg.tuple, f.alpha, f.beta, A.order, A.orbit_lengths, A.rank]
        rows.append(_row(name, got, [*want, order, orbs, rank]))
    return rows


def survey_switching_32(args) -> list[dict]:
    """All 5040 bijections for Sp_6(2); classes by canonical form.

    Without --big, canonical forms are computed for the four double-coset
    representatives and five random members of each double coset.
    """
    from .symmetry import automorphism_group, canonical_form
    ctx = SwitchingContext.standard("sp", 3, 2)
    G = pgl_on_hyperplanes(3, 2, ctx)
    labels = double_coset_labels(7, G.generators)
    perms = list(itertools.permutations(range(7)))
    ok_graphs = 0
    for phi in perms:
        g = build_gamma_phi(SwitchingPlan.permutation(ctx, phi))
        srg = check_srg(g)
        if srg is None or srg.tuple != SWITCHING_32["srg"]:
            continue
        f = four_vertex_check(g, srg, args.threads)
        ok_graphs += (f.satisfied and (f.alpha, f.beta) == (SWITCHING_32["alpha"], SWITCHING_32["beta"]))
    if args.big:
        sample = perms
    else:
        rng = np.random.default_rng(0)
        reps = enumerate_double_coset_reps(7, G.generators)
        by_label = {}
        for phi in perms:
            by_label.setdefault(labels[phi], []).append(phi)
        sample = list(reps)
        for members in by_label.values():
            sample += [members[i] for i in rng.choice(len(members), 5, replace=False)]
    forms: dict[bytes, set[int]] = {}
    for phi in sample:
        cf = canonical_form(build_gamma_phi(SwitchingPlan.permutation(ctx, phi)))
        forms.setdefault(cf, set()).add(labels[phi])
    one_to_one = all(len(s) == 1 for s in forms.values()) and \
        len(set().union(*forms.values())) == len(forms)
    rank3 = 0
    nontransitive_ok = True
    for cf, labs in forms.items():
        phi = next(p for p in sample if labels[p] in labs)
        A = automorphism_group(build_gamma_phi(SwitchingPlan.permutation(ctx, phi)))
        if A.rank == 3:
            rank3 += 1
        elif A.transitive or A.order % SWITCHING_32["N"]:
            nontransitive_ok = False
    return [_row("graphs with SRG and alpha, beta", ok_graphs, SWITCHING_32["graphs"]),
            _row("isomorphism classes", len(forms), SWITCHING_32["classes"]),
            _row("classes match double cosets", one_to_one, True),
            _row("rank 3 classes", rank3, SWITCHING_32["rank3"]),
            _row("other classes intransitive, |Aut| divisible by 64", nontransitive_ok, True)]


SURVEYS = {"intro-table": survey_intro, "cyclotomic": survey_cyclotomic,
           "ivanov": survey_ivanov, "switching-32": survey_switching_32}


def cmd_survey(args) -> int:
    rows = SURVEYS[args.scope](args)
    ok = all(r["ok"] for r in rows)
    lines = ["| row | got | expected | ok |", "|---|---|---|---|"]
    for r in rows:
        if "skipped" in r:
            lines.append(f"| {r['row']} | {r['skipped']} | | skip |")
        else:
            lines.append(f"| {r['row']} | {r['got']} | {r['expected']} | {'yes' if r['ok'] else 'NO'} |")
    _emit(args, {"scope": args.scope, "rows": rows, "ok": ok}, "\n".join(lines))
    return 0 if ok else 1


# -- argument parsing ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--threads", type=int, default=None, help="threads for the pair kernels")
    common.add_argument("--big", action="store_true", help="include runs longer than a minute")
    common.add_argument("--timing", action="store_true", help="add wall time to the report")

    ap = _Parser(prog="srg4v", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", parents=[common], help="construct a graph family")
    b.add_argument("--family", required=True, choices=FAMILY_NAMES)
    b.add_argument("--params", help="parameters as a JSON object")
    b.add_argument("--form", choices=["sp", "o", "o+", "o-"])
    for key in ("d", "q", "m", "eps", "e", "eta", "seed"):
        b.add_argument(f"--{key}", type=int)
    b.add_argument("--J", help="comma separated classes of the connection set")
    b.add_argument("--eta-poly", help="eta as a root of this polynomial, coefficients low degree first")
    b.add_argument("--out", help="graph6 output file ('-' for stdout)")
    b.add_argument("--aut", action="store_true", help="also compute the automorphism group")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("switch", parents=[common], help="build Gamma_phi from a plan file")
    s.add_argument("--plan", required=True)
    s.add_argument("--out")
    s.add_argument("--aut", action="store_true")
    s.set_defaults(func=cmd_switch)

    d = sub.add_parser("doublecosets", parents=[common], help="count PGammaL double cosets")
    d.add_argument("--d", type=int, required=True)
    d.add_argument("--q", type=int, required=True)
    d.add_argument("--enumerate", action="store_true", help="list representatives (n <= 8)")
    d.set_defaults(func=cmd_doublecosets)

    c = sub.add_parser("check", parents=[common], help="SRG and 4-vertex check of a graph6 file")
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--aut", action="store_true")
    c.set_defaults(func=cmd_check)

    a = sub.add_parser("aut", parents=[common], help="automorphism group of a graph6 file")
    a.add_argument("--in", dest="input", required=True)
    a.set_defaults(func=cmd_aut)

    v = sub.add_parser("survey", parents=[common], help="regenerate a table of known values")
    v.add_argument("scope", choices=sorted(SURVEYS))
    v.set_defaults(func=cmd_survey)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"srg4v: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
