"""Command-line front end.

Subcommands: solve, verify, roots, ngamma, minors, wsym, demo.  Rationals
are written "p/q" on the command line, comma-separated for vectors;
coordinates are a JSON object (inline or @file).  With --json the full
machine-readable report is printed to stdout; with the same seed and flags
the JSON output is byte-identical across runs.  Exit codes: 0 all requested
checks pass, 1 a check failed, 2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .config import make_config
from .demos import build_demo
from .exact import format_fraction
from .groups import (
    GroupElement,
    check_minor_identity,
    classify_by_minors,
    expected_tag,
    sample_group_element,
)
from .jsonio import (
    coords_to_json,
    fractions_to_json,
    parse_coords,
    parse_fraction,
    zexpr_to_json,
)
from .lie import Algebra, format_root_table, positive_roots
from .solutions import (
    SolutionParams,
    UnipotentCoords,
    a_case_form,
    assemble,
    characteristic_data,
    verify_integrability,
    verify_monodromy,
    verify_pde,
    verify_symmetry,
)

SCHEMA = "toda-report/1"


def _fraction_list(text: str) -> list[Fraction]:
    return [parse_fraction(x) for x in text.split(",") if x.strip()]


def _load_coords_arg(algebra: Algebra, raw: str | None) -> UnipotentCoords:
    if not raw:
        return UnipotentCoords(algebra)
    if raw.startswith("@"):
        with open(raw[1:], "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.loads(raw)
    return parse_coords(algebra, data)


def _config_from_args(args) -> tuple:
    if args.family is None or args.rank is None:
        raise ValueError("--family and --rank are required")
    algebra = Algebra(args.family, args.rank)
    if getattr(args, "gamma", None) is None:
        raise ValueError("--gamma is required for this command")
    cfg = make_config(args.family, args.rank, _fraction_list(args.gamma))
    return algebra, cfg


def _params_from_args(algebra: Algebra, cfg, args) -> SolutionParams:
    coords = _load_coords_arg(algebra, getattr(args, "coords", None))
    if getattr(args, "lambdas", None):
        lams = _fraction_list(args.lambdas)
    elif cfg.family == "A":
        lams = [Fraction(1)] * cfg.k
    else:
        lams = [Fraction(1)] * (cfg.k // 2)
    return SolutionParams.of(lams, coords)


def _emit(report: dict, args, human_lines) -> None:
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for line in human_lines:
            print(line)


def _check_lines(checks: list[dict]) -> list[str]:
    out = []
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        detail = c.get("detail", "")
        out.append(f"  {c['name']:<14} {status}   {detail}".rstrip())
    return out


def cmd_solve(args) -> int:
    algebra, cfg = _config_from_args(args)
    params = _params_from_args(algebra, cfg, args)
    bundle = assemble(cfg, params)
    report = {
        "schema": SCHEMA,
        "command": "solve",
        "config": {"family": cfg.family, "rank": cfg.rank, "gamma": fractions_to_json(cfg.gamma)},
        "lambda_full": fractions_to_json(bundle.lambdas),
        "coords": coords_to_json(params.coords),
        "beta": fractions_to_json(bundle.nu.beta),
        "chi": fractions_to_json(bundle.nu.chi),
        "F1": zexpr_to_json(bundle.F[0]),
        "term_counts": [len(f.terms) for f in bundle.F],
    }
    if bundle.reduced is not None:
        report["reduced"] = [
            {
                "index": r.index,
                "multiplier": format_fraction(r.multiplier),
                "power": format_fraction(r.power),
                "ln2_offset": format_fraction(r.ln2_coefficient),
            }
            for r in bundle.reduced
        ]
    lines = [
        f"solution for {cfg.family}{cfg.rank}, gamma = {args.gamma}",
        f"  exponents beta: {', '.join(fractions_to_json(bundle.nu.beta))}",
        f"  F_1 has {len(bundle.F[0].terms)} terms",
    ]
    _emit(report, args, lines)
    return 0


def cmd_verify(args) -> int:
    algebra, cfg = _config_from_args(args)
    params = _params_from_args(algebra, cfg, args)
    t0 = time.monotonic()
    bundle = assemble(cfg, params)
    checks = []

    if cfg.family in ("C", "B"):
        sym = verify_symmetry(bundle)
        checks.append(
            {"name": "symmetry", "passed": sym.passed, "detail": f"failures={list(sym.failures)}"}
        )
    mono = verify_monodromy(cfg, params)
    checks.append(
        {
            "name": "monodromy",
            "passed": mono.passed and mono.agree,
            "detail": f"algebraic={mono.algebraic_ok} analytic={mono.analytic_ok}",
        }
    )
    pde = verify_pde(bundle, count=args.points, tol=args.tol, seed=args.seed)
    checks.append(
        {
            "name": "pde-residual",
            "passed": pde.passed,
            "detail": f"max={pde.max_residual:.3e} points={pde.points_checked}",
        }
    )
    integ = verify_integrability(bundle)
    exponent_rows = [
        {
            "index": row.index,
            "at_zero": format_fraction(row.exponent_at_zero),
            "at_infinity": format_fraction(row.exponent_at_infinity),
        }
        for row in integ.rows
    ]
    checks.append(
        {
            "name": "integrability",
            "passed": integ.passed,
            "detail": "exponents at 0 match the doubled weights",
        }
    )
    cdata = characteristic_data(cfg)
    checks.append(
        {
            "name": "w-symmetry",
            "passed": True,
            "detail": f"w = [{', '.join(fractions_to_json(cdata.w))}]",
        }
    )
    if cfg.family == "A":
        try:
            acase = a_case_form(cfg, params)
            checks.append(
                {
                    "name": "monic-form",
                    "passed": acase.passed,
                    "detail": f"product={format_fraction(acase.product)}",
                }
            )
        except ValueError as err:
            checks.append({"name": "monic-form", "passed": False, "detail": str(err)})
    elapsed = time.monotonic() - t0
    passed = all(c["passed"] for c in checks)
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "config": {"family": cfg.family, "rank": cfg.rank, "gamma": fractions_to_json(cfg.gamma)},
        "options": {"points": args.points, "tol": args.tol, "seed": args.seed},
        "checks": checks,
        "exponents": exponent_rows,
        "monodromy_witnesses": {
            "algebraic": [list(x) for x in mono.algebraic_offenders],
            "analytic": list(mono.analytic_offenders),
        },
        "F1": zexpr_to_json(bundle.F[0]),
        "passed": passed,
    }
    lines = [f"verification for {cfg.family}{cfg.rank}:"]
    lines += _check_lines(checks)
    lines.append(f"  overall: {'PASS' if passed else 'FAIL'} ({elapsed:.2f}s)")
    _emit(report, args, lines)
    return 0 if passed else 1


def cmd_roots(args) -> int:
    if args.family is None or args.rank is None:
        raise ValueError("--family and --rank are required")
    algebra = Algebra(args.family, args.rank)
    roots = positive_roots(algebra)
    report = {
        "schema": SCHEMA,
        "command": "roots",
        "algebra": {"family": algebra.family, "rank": algebra.rank},
        "count": len(roots),
        "roots": [{"coeffs": list(r.coeffs), "name": str(r)} for r in roots],
    }
    lines = [f"{algebra}: {len(roots)} positive roots"]
    lines += [f"  {r}" for r in roots]
    _emit(report, args, lines)
    return 0


def cmd_ngamma(args) -> int:
    algebra, cfg = _config_from_args(args)
    rows = format_root_table(algebra, cfg.gamma)
    members = sum(1 for r in rows if r["integral"])
    report = {
        "schema": SCHEMA,
        "command": "ngamma",
        "config": {"family": cfg.family, "rank": cfg.rank, "gamma": fractions_to_json(cfg.gamma)},
        "rows": rows,
        "members": members,
        "dimension_of_unipotent_group": algebra.rank ** 2
        if algebra.family in ("C", "B")
        else algebra.rank * (algebra.rank + 1) // 2,
    }
    lines = [f"integral-root table for {algebra}, gamma = {args.gamma}"]
    lines.append(f"  {'slot':<6} {'root':<22} {'value':<8} member")
    for r in rows:
        lines.append(
            f"  {r['slot']:<6} {r['root_str']:<22} {r['value']:<8} {'yes' if r['integral'] else 'no'}"
        )
    lines.append(f"  members: {members} / {len(rows)}")
    lines.append(f"  dim N = {report['dimension_of_unipotent_group']}")
    _emit(report, args, lines)
    return 0


def cmd_minors(args) -> int:
    if args.family is None or args.rank is None:
        raise ValueError("--family and --rank are required")
    algebra = Algebra(args.family, args.rank)
    results = []
    ok = True
    for idx in range(args.count):
        g = sample_group_element(algebra, seed=args.seed + idx, bound=3)
        rep = check_minor_identity(g)
        tag = classify_by_minors(GroupElement(g.entries))
        good = tag == expected_tag(algebra.k)
        ok = ok and good
        results.append(
            {
                "seed": args.seed + idx,
                "pairs_checked": rep.pairs_checked,
                "exhaustive": rep.exhaustive,
                "classified_as": tag,
                "passed": good,
            }
        )
    report = {
        "schema": SCHEMA,
        "command": "minors",
        "algebra": {"family": algebra.family, "rank": algebra.rank},
        "samples": results,
        "passed": ok,
    }
    lines = [f"minor identities for {algebra} ({args.count} samples)"]
    for r in results:
        lines.append(
            f"  seed {r['seed']}: {r['pairs_checked']} pairs, classified {r['classified_as']}"
        )
    lines.append(f"  overall: {'PASS' if ok else 'FAIL'}")
    _emit(report, args, lines)
    return 0 if ok else 1


def cmd_wsym(args) -> int:
    _, cfg = _config_from_args(args)
    data = characteristic_data(cfg)
    report = {
        "schema": SCHEMA,
        "command": "wsym",
        "config": {"family": cfg.family, "rank": cfg.rank, "gamma": fractions_to_json(cfg.gamma)},
        "w": fractions_to_json(data.w),
        "beta": fractions_to_json(data.beta),
        "order": data.operator.order,
        "passed": True,
    }
    lines = [
        f"characteristic data for {cfg.family}{cfg.rank}:",
        f"  w    = [{', '.join(fractions_to_json(data.w))}]",
        f"  beta = [{', '.join(fractions_to_json(data.beta))}]",
        f"  operator order {data.operator.order}; annihilates every basis power",
    ]
    _emit(report, args, lines)
    return 0


def cmd_demo(args) -> int:
    body = build_demo(args.target)
    report = {"schema": SCHEMA, "command": "demo", **body}
    lines = [f"demo {args.target}: {body['family']}{body['rank']}, gamma = {','.join(body['gamma'])}"]
    lines.append("  dependent entries:")
    for row in body["dependent_entries"]:
        lines.append(f"    {row['formula']:<40} {'ok' if row['matches'] else 'MISMATCH'}")
    lines.append(f"  monodromy exponents: {', '.join(body['monodromy_exponents'])}")
    lines.append(f"  coordinates with integral roots: {', '.join(body['nonzero_coordinates'])}")
    if "ln2_offsets" in body:
        lines.append(f"  ln2 offsets: {', '.join(body['ln2_offsets'])}")
    lines.append(f"  all formulas match: {body['all_formulas_match']}")
    _emit(report, args, lines)
    return 0 if body["all_formulas_match"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toda",
        description="Exact construction and verification of singular 2D Toda solutions (A/C/B).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gamma=True, params=False, points=False):
        p.add_argument("--family", choices=["A", "C", "B"])
        p.add_argument("--rank", type=int)
        if gamma:
            p.add_argument("--gamma", help="comma-separated rationals, e.g. -1/2,1/4")
        if params:
            p.add_argument("--lambda", dest="lambdas", help="comma-separated positive rationals")
            p.add_argument("--coords", help='JSON object {"c30":"1+i"} or @file')
        if points:
            p.add_argument("--points", type=int, default=20)
            p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true", help="machine-readable report on stdout")

    p = sub.add_parser("solve", help="assemble a solution and print its exact data")
    common(p, params=True)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="run every verification for a configuration")
    common(p, params=True, points=True)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("roots", help="list the positive roots")
    common(p, gamma=False)
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("ngamma", help="integral-root table and coordinate restrictions")
    common(p)
    p.set_defaults(fn=cmd_ngamma)

    p = sub.add_parser("minors", help="minor identities on sampled group elements")
    common(p, gamma=False)
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(fn=cmd_minors)

    p = sub.add_parser("wsym", help="characteristic operator data")
    common(p)
    p.set_defaults(fn=cmd_wsym)

    p = sub.add_parser("demo", help="worked example (c3 or b2)")
    p.add_argument("target", choices=["c3", "b2"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_demo)

    return parser


def _merge_negative_values(argv: list[str]) -> list[str]:
    # Values like "-1/2,1/4" look like options to argparse; glue them onto
    # their flag with "=".
    merged = []
    skip = False
    value_flags = {"--gamma", "--lambda"}
    for i, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in value_flags and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            merged.append(f"{tok}={argv[i + 1]}")
            skip = True
        else:
            merged.append(tok)
    return merged


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_negative_values(list(argv)))
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # internal failure
        print(f"internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
