"""Command-line front end: ``python -m zccs <subcommand> ...``.

Exit status: 0 success, 1 verification failure, 2 usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import io
from .expr import ExprError, format_gbf, parse_gbf_expr, parse_h_path
from .gbf import check_path_reduction, find_deletion_set
from .pbf import ConstructionParams, HConditionWarning, HFunction, check_h_condition
from .pmepr import check_pmepr_bound, golay_scan
from .seqgen import generate_ccc, generate_zccs, plan_parameters
from .verify import check_ccc, check_optimality, check_zccs, measure_zcz

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}")


def _write_report(path, payload: dict) -> None:
    if path:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _build_h(args, q: int, n: int) -> HFunction:
    if args.h_table and args.h_path:
        raise UsageError("give at most one of --h-table and --h-path")
    if args.h_table:
        table = _ints(args.h_table)
        if len(table) != 2 ** (n + 1):
            raise UsageError(f"--h-table needs 2^(n+1) = {2 ** (n + 1)} values, got {len(table)}")
        return HFunction(q, table)
    if args.h_path:
        perm, lin, const = parse_h_path(args.h_path)
        if len(perm) != n + 1:
            raise UsageError(f"--h-path perm must cover n+1 = {n + 1} variables")
        return HFunction.from_path(q, perm, lin, const)
    return HFunction.zero(q, n + 1)


def _construction(args, with_primes: bool) -> ConstructionParams:
    g = parse_gbf_expr(args.g, args.q, args.m)
    n = args.n
    delete = _ints(args.delete)
    if delete is None:
        delete = find_deletion_set(g, n)
        if delete is None:
            raise UsageError(f"no deletion set of size {n} reduces G(g) to a q/2-weighted path")
    gamma = args.gamma
    if gamma is None:
        report = check_path_reduction(g, delete)
        if not report.ok:
            raise UsageError(f"deletion set {list(delete)} fails: {report.failure_reason.value}")
        gamma = min(report.end_vertices)
    h = _build_h(args, args.q, n)
    primes = _ints(args.primes) or () if with_primes else ()
    widths = _ints(args.widths) if with_primes else ()
    return ConstructionParams(args.q, g, n, delete, gamma, primes, widths, h,
                              strict=getattr(args, "strict", False),
                              literal_ybar=getattr(args, "literal_ybar", False))


def cmd_generate(args) -> int:
    params = _construction(args, with_primes=True)
    hc = check_h_condition(params.h)
    if not hc.ok:
        print(f"warning: h violates the {{c, c+q/2}} condition: {sorted(set(params.h.table))}",
              file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HConditionWarning)
        S = generate_zccs(params)
    io.write_codeset(S, args.out)
    p = S.params
    print(f"generated ({p.M},{p.Z})-ZCCS_{p.K}^{p.N} sigma={p.sigma} g={format_gbf(params.g)} "
          f"delete={list(params.delete)} gamma={params.gamma} -> {args.out}")
    _write_report(args.report, {"M": p.M, "K": p.K, "N": p.N, "Z": p.Z, "sigma": p.sigma,
                                "h_condition": hc.ok, "out": str(args.out)})
    return EXIT_OK


def cmd_ccc(args) -> int:
    params = _construction(args, with_primes=False)
    S = generate_ccc(params.g, params.n, params.delete, params.gamma, params.q, params.h)
    rep = check_ccc(S, jobs=args.jobs)
    if args.out:
        io.write_codeset(S, args.out)
    p = S.params
    print(f"({p.K},{p.K},{p.N})-CCC: {rep.summary()}")
    _write_report(args.report, _corr_payload(rep))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _corr_payload(rep) -> dict:
    return {
        "passed": rep.passed,
        "engine": rep.engine,
        "Z": rep.Z,
        "peak_value": rep.peak_value,
        "violations": [
            {"d1": v.d1, "d2": v.d2, "tau": v.tau, "magnitude": v.magnitude, "kind": v.kind}
            for v in rep.violations[:1000]
        ],
        "violation_count": len(rep.violations),
    }


def cmd_plan(args) -> int:
    plan = plan_parameters(args.length, args.m)
    print(f"length {plan.length} = {'*'.join(map(str, plan.primes)) or '1'} * 2^{plan.m}; "
          f"widths {list(plan.widths)}")
    _write_report(args.report, {"length": plan.length, "m": plan.m,
                                "primes": list(plan.primes), "widths": list(plan.widths)})
    return EXIT_OK


def cmd_verify(args) -> int:
    S = io.read_codeset(args.file)
    p = S.params
    Z = args.zcz or p.Z
    rep = check_zccs(S, Z, engine=args.engine, ordered=not args.fast, jobs=args.jobs)
    opt = check_optimality(p.M, p.K, p.N, Z)
    print(f"({p.M},{Z})-ZCCS_{p.K}^{p.N}: {rep.summary()} optimality={opt.value}")
    for v in rep.violations[:10]:
        print(f"  violation: codes ({v.d1},{v.d2}) tau={v.tau} |value|={v.magnitude:.6g} [{v.kind}]")
    payload = _corr_payload(rep)
    payload["optimality"] = opt.value
    _write_report(args.report, payload)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_pmepr(args) -> int:
    S = io.read_codeset(args.file)
    rep = check_pmepr_bound(S, args.bound, args.oversample)
    status = "PASS" if rep.passed else "FAIL"
    print(f"{status} max column PMEPR {rep.worst:.9f} (bound {rep.bound}) "
          f"at code {rep.worst_at[0]} column {rep.worst_at[1]}")
    _write_report(args.report, {"passed": rep.passed, "bound": rep.bound, "oversample": rep.oversample,
                                "worst": rep.worst, "worst_at": list(rep.worst_at),
                                "per_code_max": rep.per_code_max})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_zcz_measure(args) -> int:
    S = io.read_codeset(args.file)
    z = measure_zcz(S, engine=args.engine, jobs=args.jobs)
    print(f"measured ZCZ width {z} (claimed {S.params.Z})")
    _write_report(args.report, {"measured_Z": z, "claimed_Z": S.params.Z})
    return EXIT_OK if z >= S.params.Z else EXIT_FAIL


def cmd_export_csv(args) -> int:
    S = io.read_codeset(args.file)
    io.export_csv(S, args.out)
    print(f"wrote {S.params.M * S.params.K} sequences to {args.out}")
    return EXIT_OK


def cmd_golay_scan(args) -> int:
    S = io.read_codeset(args.file)
    found = golay_scan(S)
    total = found.size
    print(f"{int(found.sum())}/{total} columns have a Golay partner among the set's columns")
    _write_report(args.report, {"with_partner": int(found.sum()), "columns": total,
                                "per_code": [int(x) for x in found.sum(axis=1)]})
    return EXIT_OK


def _construction_flags(p: argparse.ArgumentParser, primes: bool) -> None:
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--g", required=True, help='GBF expression, e.g. "y1*y2+y0"')
    p.add_argument("--delete", help="comma-separated deletion vertices (searched if omitted)")
    p.add_argument("--gamma", type=int, help="path end vertex (smallest end if omitted)")
    p.add_argument("--h-table", help="2^(n+1) values of h, v' LSB first")
    p.add_argument("--h-path", help='path form, e.g. "perm=0,1;u=0,0;c=0"')
    if primes:
        p.add_argument("--primes", help="comma-separated primes")
        p.add_argument("--widths", help="bit widths (default ceil(log2 p))")
        p.add_argument("--strict", action="store_true", help="require p < 2^s")
        p.add_argument("--literal-ybar", action="store_true",
                       help="leave the last complemented deletion entry uncomplemented")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zccs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a ZCCS from a GBF and primes")
    _construction_flags(p, primes=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("ccc", help="build and check a complete complementary code")
    _construction_flags(p, primes=False)
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_ccc)

    p = sub.add_parser("plan", help="factor a target length into construction primes")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("verify", help="check the ZCCS correlation clauses")
    p.add_argument("file")
    p.add_argument("--zcz", type=int, help="zone width to check (default: claimed Z)")
    p.add_argument("--engine", choices=("exact", "float"), default="exact")
    p.add_argument("--fast", action="store_true", help="check unordered pairs only")
    p.add_argument("--jobs", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pmepr", help="column PMEPR against a bound")
    p.add_argument("file")
    p.add_argument("--bound", type=float, default=2.0)
    p.add_argument("--oversample", type=int, default=64)
    p.add_argument("--jobs", type=int, help="accepted for symmetry; evaluation is vectorised")
    p.add_argument("--report")
    p.set_defaults(func=cmd_pmepr)

    p = sub.add_parser("zcz-measure", help="largest zone width the set actually achieves")
    p.add_argument("file")
    p.add_argument("--engine", choices=("exact", "float"), default="exact")
    p.add_argument("--jobs", type=int)
    p.add_argument("--report")
    p.set_defaults(func=cmd_zcz_measure)

    p = sub.add_parser("export-csv", help="write complex entries as CSV")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_csv)

    p = sub.add_parser("golay-scan", help="look for Golay partners of every column")
    p.add_argument("file")
    p.add_argument("--report")
    p.set_defaults(func=cmd_golay_scan)
    return parser


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except io.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ExprError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
