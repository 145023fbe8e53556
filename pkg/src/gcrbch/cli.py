"""Command-line workbench.

JSON goes to stdout, diagnostics and progress to stderr.  Exit status 0 means
success (or a passing check), 1 a computed result that failed its check, and
2 a usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__, _kernels, bch, charsum, codes, construct, cover, gf2m
from .bch import SyndromePair

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _field(args) -> gf2m.FieldSpec:
    modulus = int(args.modulus, 16) if getattr(args, "modulus", None) else None
    return gf2m.make_field(args.m, modulus)


def _targets(f: gf2m.FieldSpec, text: str) -> list[SyndromePair]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts or len(parts) % 2:
        raise UsageError("--targets needs an even number of hex elements a1,b1,a2,b2,...")
    vals = [gf2m.parse_felt(f, p) for p in parts]
    return [SyndromePair(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)]


def _manifest(args, argv, f, t0, work=None) -> dict:
    return {
        "command": " ".join(["gcrbch", *argv]),
        "field": f.to_json() if f is not None else None,
        "seed": getattr(args, "seed", None),
        "wall_time_s": round(time.perf_counter() - t0, 3),
        "work": work or {},
        "version": __version__,
        "backend": _kernels.BACKEND,
    }


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


# -- subcommands ------------------------------------------------------------

def cmd_field(args, argv, t0):
    f = _field(args)
    _emit({"result": f.to_json(), "manifest": _manifest(args, argv, f, t0)})
    return EXIT_OK


def cmd_ghw(args, argv, t0):
    f = _field(args)
    C = bch.bch_code(f, args.e)
    d = codes.ghw(C, args.r)
    result = {"code": f"BCH({args.e},{args.m})", "n": C.n, "k": C.k, "r": args.r, "d_r": d}
    status = EXIT_OK
    if args.e == 1:
        closed = codes.hamming_ghw_sequence(args.m)[args.r - 1]
        result["closed_form"] = closed
        status = EXIT_OK if closed == d else EXIT_FAILED
    _emit({"result": result, "manifest": _manifest(args, argv, f, t0)})
    return status


def cmd_gcr(args, argv, t0):
    f = _field(args)
    cs = bch.build_columns(f)
    res = cover.gcr_search(cs, args.r, symmetry=not args.no_symmetry, jobs=args.jobs,
                           progress=cover.log_progress)
    cert = cover.certify_no_cover(cs, res.worst_targets, res.value - 1) if res.value > 0 else None
    result = {"m": args.m, "r": args.r, "rho": res.value, "symmetry": res.symmetry,
              "worst_targets": [t.to_json() for t in res.worst_targets],
              "histogram": res.stats["histogram"],
              "lower_bound_certificate": cert.to_json() if cert else None}
    work = {"orbits_visited": res.orbits_visited, "subspaces_enumerated": res.subspaces_enumerated,
            "tuples_evaluated": res.tuples_evaluated}
    _emit({"result": result, "manifest": _manifest(args, argv, f, t0, work)})
    return EXIT_OK


def cmd_dcc(args, argv, t0):
    f = _field(args)
    cs = bch.build_columns(f)
    result = {"m": args.m, "r": args.r, "d_cc": cover.d_cc(cs, args.r)}
    status = EXIT_OK
    if args.generic:
        g = cover.d_cc_generic(bch.bch_code(f, 2), bch.bch_code(f, 1), args.r)
        result["d_cc_generic"] = g
        status = EXIT_OK if g == result["d_cc"] else EXIT_FAILED
    _emit({"result": result, "manifest": _manifest(args, argv, f, t0)})
    return status


def _load_certificate(path: str) -> cover.CoverCertificate:
    with open(path) as fh:
        d = json.load(fh)
    if "result" in d:
        d = d["result"]
    return cover.CoverCertificate.from_json(d)


def cmd_certify(args, argv, t0):
    if args.recheck:
        cert = _load_certificate(args.recheck)
        ok = cover.recheck_certificate(cert)
        _emit({"result": {"recheck": ok, "verdict": cert.verdict, "t": cert.radius_excluded},
               "manifest": _manifest(args, argv, cert.field, t0)})
        return EXIT_OK if ok else EXIT_FAILED
    if args.m is None or args.t is None:
        raise UsageError("certify needs --m and --t (or --recheck FILE)")
    f = _field(args)
    cs = bch.build_columns(f)
    if args.targets:
        targets = _targets(f, args.targets)
    elif args.targets_from == "noncube-triple":
        targets = [SyndromePair(0, a) for a in charsum.find_noncube_triple(f)]
    elif args.targets_from == "basis":
        targets = [SyndromePair(0, 1 << i) for i in range(f.m)]
    else:
        raise UsageError("certify needs --targets or --targets-from")
    cert = cover.certify_no_cover(cs, targets, args.t)
    _emit({"result": cert.to_json(),
           "manifest": _manifest(args, argv, f, t0, {"subsets_enumerated": cert.subsets_checked})})
    return EXIT_OK


def cmd_cover(args, argv, t0):
    f = _field(args)
    targets = _targets(f, args.targets)
    sol = construct.cover_2kplus1(f, targets, args.order, args.seed)
    if sol is None:
        _emit({"result": None, "manifest": _manifest(args, argv, f, t0)})
        return EXIT_FAILED
    ok = construct.verify_solution(f, targets, sol)
    _emit({"result": sol.to_json(verified=ok), "manifest": _manifest(args, argv, f, t0)})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_count(args, argv, t0):
    f = _field(args)
    targets = _targets(f, args.targets)
    k = len(targets)
    N = construct.count_solutions(f, targets)
    result = {"N": N, "k": k, "m": args.m,
              "proof_lower_bound_holds": construct.proof_lower_bound_holds(N, k, args.m)}
    if k >= 2:
        result["threshold_m"] = cover.threshold_upper(k)
    _emit({"result": result, "manifest": _manifest(args, argv, f, t0)})
    return EXIT_OK


def cmd_charsum(args, argv, t0):
    f = _field(args)
    reports = []
    if args.kind == "weil":
        if args.poly:
            coeffs = [gf2m.parse_felt(f, c) for c in args.poly.split(",")]
            reports.append(charsum.weil_check(f, coeffs))
        else:
            for name, bits in charsum.WEIL_CORPUS.items():
                reports.append(charsum.weil_check(f, charsum.f2_poly(bits), family=name))
    else:
        rng = random.Random(args.seed)
        if args.targets:
            terms = [tuple(t) for t in _targets(f, args.targets)]
            reports.append(charsum.cochrane_check(f, terms))
        else:
            while len(reports) < args.samples:
                terms = charsum.random_terms(f, rng.randint(1, args.max_terms), rng)
                if not charsum.is_degenerate(f, terms):
                    reports.append(charsum.cochrane_check(f, terms))
    ok = all(r.passed for r in reports)
    manifest = _manifest(args, argv, f, t0, {"instances": len(reports)})
    if args.format == "csv":
        sys.stdout.write(f"# manifest: {json.dumps(manifest)}\n")
        sys.stdout.write(charsum.CharSumReport.CSV_HEADER + "\n")
        for r in reports:
            sys.stdout.write(r.csv_row() + "\n")
    else:
        _emit({"result": {"pass": ok, "reports": [r.to_json() for r in reports]}, "manifest": manifest})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args, argv, t0):
    f = _field(args)
    lemma = args.lemma
    detail = {}
    if lemma == "y1y2y3":
        ok = charsum.verify_y1y2y3(f, args.mode, args.trials, args.seed)
    elif lemma == "cube":
        ok = charsum.verify_cube_lemma(f, args.trials, args.mode, args.seed)
    elif lemma == "beta4":
        ok = charsum.verify_beta4(f, args.trials, args.mode, args.seed)
    elif lemma == "quadratic":
        ok = charsum.verify_quadratic_criterion(f)
    elif lemma == "noncube":
        triple = charsum.find_noncube_triple(f)
        ok = charsum.is_noncube_triple(f, triple)
        detail = {"triple": [hex(a) for a in triple],
                  "A": hex(charsum.noncube_product(f, *triple))}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown lemma {lemma}")
    _emit({"result": {"lemma": lemma, "mode": args.mode, "pass": ok, **detail},
           "manifest": _manifest(args, argv, f, t0)})
    return EXIT_OK if ok else EXIT_FAILED


def cmd_classify(args, argv, t0):
    reps, count = codes.classify_small(args.n, args.k, args.d)
    for i, c in enumerate(reps):
        _emit({"class": i, "code": c.to_json(), "min_distance": codes.min_distance(c)})
    _emit({"count": count, "manifest": _manifest(args, argv, None, t0)})
    return EXIT_OK


def cmd_bound(args, argv, t0):
    if args.kind == "counting":
        rep = cover.counting_bound(args.k, args.m)
    elif args.kind == "threshold":
        rep = cover.threshold_report(args.k, args.m)
    else:
        seq = codes.hamming_ghw_sequence(args.m)
        if args.k > len(seq):
            raise UsageError(f"r={args.k} exceeds the Hamming code dimension")
        # BCH(1,m) has dimension m larger than BCH(2,m)
        n = (1 << args.m) - 1
        rep = cover.supercode_bound(args.k, (n - 2 * args.m, n - args.m), seq[args.k - 1], args.m)
    _emit({"result": rep.to_json(), "manifest": _manifest(args, argv, None, t0)})
    return EXIT_OK if rep.hypothesis_holds else EXIT_FAILED


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcrbch", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def field_args(sp, required=True):
        sp.add_argument("--m", type=int, required=required)
        sp.add_argument("--modulus", help="field modulus as hex, e.g. 0x13")

    sp = sub.add_parser("field", help="describe GF(2^m)")
    field_args(sp)
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("ghw", help="generalized Hamming weight of BCH(e, m)")
    field_args(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--e", type=int, default=1, choices=(1, 2))
    sp.set_defaults(func=cmd_ghw)

    sp = sub.add_parser("gcr", help="exact generalized covering radius of BCH(2, m)")
    field_args(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--no-symmetry", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_gcr)

    sp = sub.add_parser("dcc", help="d_r(BCH(2,m), BCH(1,m))")
    field_args(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--generic", action="store_true", help="also run the literal oracle")
    sp.set_defaults(func=cmd_dcc)

    sp = sub.add_parser("certify", help="exhaustive no-cover certificate")
    field_args(sp, required=False)
    sp.add_argument("--t", type=int)
    sp.add_argument("--targets", help="hex list a1,b1,a2,b2,...")
    sp.add_argument("--targets-from", choices=("noncube-triple", "basis"))
    sp.add_argument("--recheck", metavar="FILE")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("cover", help="explicit cover by at most 2k+1 columns")
    field_args(sp)
    sp.add_argument("--targets", required=True)
    sp.add_argument("--order", choices=("sequential", "randomized"), default="sequential")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("count", help="number of (x, y_i, z_i) solutions")
    field_args(sp)
    sp.add_argument("--targets", required=True)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("charsum", help="character-sum bound instances")
    field_args(sp)
    sp.add_argument("--kind", choices=("weil", "cochrane"), default="weil")
    sp.add_argument("--poly", help="hex coefficients, lowest degree first")
    sp.add_argument("--targets", help="cochrane terms a1,b1,a2,b2,...")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--max-terms", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_charsum)

    sp = sub.add_parser("verify", help="check an algebraic identity or criterion")
    field_args(sp)
    sp.add_argument("--lemma", required=True, choices=("y1y2y3", "cube", "beta4", "noncube", "quadratic"))
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    sp.add_argument("--trials", type=int, default=10**4)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("classify", help="classify [n, k, >=d] codes up to permutation")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("bound", help="counting, threshold or supercode bound report")
    sp.add_argument("--kind", choices=("counting", "threshold", "supercode"), required=True)
    sp.add_argument("--k", type=int, required=True, help="order k (or r)")
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_bound)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_USAGE
    t0 = time.perf_counter()
    try:
        return args.func(args, argv, t0)
    except (UsageError, ValueError, ZeroDivisionError, RuntimeError, OSError) as e:
        print(f"gcrbch {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
