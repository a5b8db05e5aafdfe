"""Command-line front end: norms, means, inclusion decisions, sweeps, checks.

Space parameters and family exponents are accepted only as exact rationals
("3/2") or "inf"; decimal parameter input is rejected so that boundary
branches of the inclusion decision cannot be perturbed by rounding.  All
output is byte-deterministic for a fixed invocation: floats print in
shortest round-trip form, JSON keys are sorted, rows come out in a fixed
order.  MNL_THREADS caps internal parallelism.

Exit codes: 0 success (including NotIncluded-free results), 1 not included,
2 usage error, 3 inconclusive norm, 4 quadrature budget exhausted,
5 unexpected verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import BranchMismatchError, DomainError, ToleranceNotReached
from .functions import function_from_json, parse_function_spec
from .inclusion import decide_inclusion
from .means import mean_profile, mean_with_error
from .norms import mixed_norm
from .params import SpaceParams

EXIT_OK = 0
EXIT_NOT_INCLUDED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3
EXIT_BUDGET = 4
EXIT_VERIFY_FAILED = 5


def _fmt(x: float) -> str:
    return repr(float(x))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + ("\n" if not text.endswith("\n") else ""), encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump_json(payload: dict, out: str | None) -> None:
    _emit(json.dumps(payload, sort_keys=True), out)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MNL_THREADS", "1")))
    except ValueError:
        return 1


def _parse_function(args):
    if getattr(args, "f_json", None):
        return function_from_json(json.loads(args.f_json))
    if getattr(args, "f", None):
        return parse_function_spec(args.f)
    raise ValueError("a function spec is required (--f or --f-json)")


def _parse_tol(text: str) -> float:
    tol = float(text)
    if not 0.0 < tol <= 1e-2:
        raise ValueError(f"tolerance must lie in (0, 1e-2], got {text}")
    return tol


def _parse_k_range(text: str):
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"expected a k range like 4..20, got {text!r}")
    lo_i, hi_i = int(lo), int(hi)
    if lo_i < 0 or hi_i < lo_i or hi_i > 52:
        raise ValueError(f"k range must satisfy 0 <= a <= b <= 52, got {text!r}")
    return lo_i, hi_i


def cmd_norm(args) -> int:
    f = _parse_function(args)
    s = SpaceParams.parse(args.space)
    result = mixed_norm(f, s, args.tol)
    _dump_json(result.to_json(), args.out)
    return EXIT_INCONCLUSIVE if result.kind == "inconclusive" else EXIT_OK


def cmd_mean(args) -> int:
    f = _parse_function(args)
    value, err = mean_with_error(f, args.p, args.r, args.tol)
    _dump_json({"p": args.p, "r": args.r, "value": value, "error": err}, args.out)
    return EXIT_OK


def cmd_include(args) -> int:
    src = SpaceParams.parse(args.src)
    dst = SpaceParams.parse(args.dst)
    verdict = decide_inclusion(src, dst)
    payload = verdict.to_json()
    if verdict.constant is not None and not verdict.constant.is_explicit:
        payload["constant"]["note"] = "C-dependent"
    _dump_json(payload, args.out)
    return EXIT_OK if verdict.included else EXIT_NOT_INCLUDED


def cmd_witness(args) -> int:
    src = SpaceParams.parse(args.src)
    dst = SpaceParams.parse(args.dst)
    verdict = decide_inclusion(src, dst)
    if verdict.included:
        _dump_json({"witness": None, "included": True, "branch": verdict.branch.value}, args.out)
        return EXIT_NOT_INCLUDED
    _dump_json(
        {"witness": verdict.witness.to_json(), "included": False, "branch": verdict.branch.value},
        args.out,
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    f = _parse_function(args)
    lo, hi = _parse_k_range(args.k)
    radii = [1.0 - 2.0**-k for k in range(lo, hi + 1)]
    if args.weighted and args.alpha is None:
        raise ValueError("--weighted needs --alpha")
    profile = mean_profile(f, args.p, radii, args.tol)
    rows = []
    if args.weighted:
        alpha = float(SpaceParams(1, 1, args.alpha).alpha)
        header = "r,weighted_mean"
        for r, v, ok in zip(profile.radii, profile.values, profile.ok):
            if not ok:
                raise ToleranceNotReached(f"mean at r={r} exhausted the angle budget")
            rows.append((r, (1.0 - r) ** alpha * v))
        lines = [header] + [f"{_fmt(r)},{_fmt(v)}" for r, v in rows]
    else:
        header = "r,mean,error"
        for r, v, e, ok in zip(profile.radii, profile.values, profile.error_bounds, profile.ok):
            if not ok:
                raise ToleranceNotReached(f"mean at r={r} exhausted the angle budget")
            rows.append((r, v, e))
        lines = [header] + [f"{_fmt(r)},{_fmt(v)},{_fmt(e)}" for r, v, e in rows]
    _emit("\n".join(lines), args.out)
    if args.fig:
        from .plots import save_sweep_figure

        save_sweep_figure(rows, args.fig, label=f.label(), weighted=args.weighted)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .checks import run_suite

    reports = run_suite(args.checks, tol=args.tol, max_workers=_threads())
    if not reports:
        raise ValueError(f"no checks match pattern {args.checks!r}")
    n_bad = sum(1 for r in reports if not r.ok)
    n_expected = sum(1 for r in reports if r.expected_fail)
    if args.format == "json":
        lines = [json.dumps(r.to_json(), sort_keys=True) for r in reports]
    else:
        lines = [f"{'check':24s} {'instance':46s} {'violation':>11s} outcome"]
        lines += [r.row() for r in reports]
        lines.append(
            f"-- {len(reports)} checks, {n_bad} unexpected outcomes, "
            f"{n_expected} expected-fail rows"
        )
    _emit("\n".join(lines), args.out)
    if args.fig:
        from .plots import save_verify_figure

        save_verify_figure(reports, args.fig)
    return EXIT_OK if n_bad == 0 else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixednorm",
        description="Integral means, mixed norms and inclusion decisions "
        "for analytic function spaces on the unit disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_function_args(p):
        p.add_argument("--f", help="function shorthand, e.g. power:3/2 or lacunary:ones")
        p.add_argument("--f-json", help='function as JSON {"family": ..., "params": {...}}')

    p = sub.add_parser("norm", help="mixed norm of a function")
    add_function_args(p)
    p.add_argument("--space", required=True, help="p,q,alpha as exact rationals or inf")
    p.add_argument("--tol", type=_parse_tol, default=1e-6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("mean", help="integral mean M_p(r, f)")
    add_function_args(p)
    p.add_argument("--p", required=True, help="mean exponent, rational or inf")
    p.add_argument("--r", type=float, required=True, help="radius in (0,1)")
    p.add_argument("--tol", type=_parse_tol, default=1e-9)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("include", help="decide H(src) within H(dst)")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_include)

    p = sub.add_parser("witness", help="non-inclusion witness function")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sweep", help="CSV profile of M_p over r = 1 - 2^-k")
    add_function_args(p)
    p.add_argument("--p", required=True)
    p.add_argument("--k", required=True, help="k range a..b for r = 1-2^-k")
    p.add_argument("--weighted", action="store_true", help="emit (1-r)^alpha M_p")
    p.add_argument("--alpha", help="weight exponent for --weighted")
    p.add_argument("--tol", type=_parse_tol, default=1e-9)
    p.add_argument("--out")
    p.add_argument("--fig", help="write a figure of the profile to this path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run estimate checks over the standard battery")
    p.add_argument("--checks", default="*", help="check-name glob")
    p.add_argument("--tol", type=_parse_tol, default=1e-5)
    p.add_argument("--format", choices=("table", "json"), default="table",
                   help="table, or one JSON object per check line")
    p.add_argument("--out")
    p.add_argument("--fig", help="write a violation chart to this path")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ToleranceNotReached as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, TypeError, KeyError, BranchMismatchError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
