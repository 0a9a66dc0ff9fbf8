"""Command-line front end: verify / expand / selftest.

Exit codes: 0 verified or all suites passed, 1 mismatch or suite failure,
2 usage or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .elliptic import CalibrationError, HEXAGONAL, POINT_KINDS, SQUARE
from .series import TruncatedSeries, format_rational, parse_rational
from .verify import SERIES_IDS, VerificationReport, run_expand, run_selftest, run_verify


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jflat",
        description="Exact elliptic expansions of the j-function at the hexagonal "
                    "and square points, verified against flat-coordinate series.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="compare both sides of the identity exactly")
    verify.add_argument("--point", choices=(*POINT_KINDS, "both"), default="both")
    verify.add_argument("--order", type=int, default=24)
    verify.add_argument("--format", choices=("json", "csv", "table"), default="table")
    verify.add_argument("--perturb", default=None, help=argparse.SUPPRESS)
    verify.set_defaults(func=_cmd_verify)

    expand = sub.add_parser("expand", help="emit one coefficient table")
    expand.add_argument("--series", choices=SERIES_IDS, required=True)
    expand.add_argument("--point", choices=POINT_KINDS, default=None)
    expand.add_argument("--kind", choices=("cubic", "quartic"), default=None)
    expand.add_argument("--order", type=int, default=24)
    expand.add_argument("--format", choices=("json", "csv", "table"), default="table")
    expand.set_defaults(func=_cmd_expand)

    selftest = sub.add_parser("selftest", help="run every invariant suite")
    selftest.set_defaults(func=_cmd_selftest)
    return parser


def _cmd_verify(args: argparse.Namespace) -> int:
    points = list(POINT_KINDS) if args.point == "both" else [args.point]
    perturb = None
    if args.perturb is not None:
        degree, _, value = args.perturb.partition(":")
        perturb = {int(degree): parse_rational(value or "1/1")}
    reports = [run_verify(p, args.order, _perturb=perturb) for p in points]

    if args.format == "json":
        print(json.dumps({"reports": [r.to_json_obj() for r in reports]}, indent=2))
    elif args.format == "csv":
        print("point,degree,lhs,rhs,equal")
        for report, lhs, rhs in _verify_tables(reports, args.order, perturb):
            for degree in report.checked_degrees:
                left, right = lhs[degree], rhs[degree]
                print(f"{report.point},{degree},{format_rational(left)},"
                      f"{format_rational(right)},{str(left == right).lower()}")
    else:
        for report, lhs, rhs in _verify_tables(reports, args.order, perturb):
            _print_verify_table(report, lhs, rhs)
    return 0 if all(r.verified and r.integrality_ok for r in reports) else 1


def _verify_tables(reports, order, perturb):
    # Recompute both sides once more for display; cheap at these orders.
    from .closedform import closed_form_series
    from .verify import composed_series
    for report in reports:
        lhs = composed_series(report.point, order)
        if perturb:
            lhs = lhs + TruncatedSeries.from_terms(perturb, order)
        yield report, lhs, closed_form_series(report.point, order)


def _print_verify_table(report: VerificationReport, lhs, rhs) -> None:
    status = "verified" if report.verified else "MISMATCH"
    print(f"point={report.point} order={report.order} {status} "
          f"integrality={'ok' if report.integrality_ok else 'BROKEN'} "
          f"elapsed={report.elapsed_ms}ms")
    if report.first_mismatch is not None:
        m = report.first_mismatch
        print(f"  first mismatch at degree {m.degree}: "
              f"lhs={format_rational(m.lhs)} rhs={format_rational(m.rhs)}")
    width = max((len(str(d)) for d in report.checked_degrees), default=1)
    for degree in report.checked_degrees:
        print(f"  t^{degree:<{width}}  {format_rational(lhs[degree])}")
    print()


def _cmd_expand(args: argparse.Namespace) -> int:
    series, var = run_expand(args.series, point=args.point, kind=args.kind,
                             order=args.order)
    if args.format == "json":
        print(json.dumps(series.to_json_terms(), indent=2))
    elif args.format == "csv":
        print(series.to_csv())
    else:
        degrees = [d for d, _ in series.support()]
        width = max((len(str(d)) for d in degrees), default=1)
        for degree, coeff in series.support():
            value = format_rational(coeff)
            if coeff.denominator == 1:
                value = str(coeff.numerator)
            print(f"{var}^{str(degree):<{width}}: {value}")
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    results = run_selftest()
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        suffix = f" ({result.detail})" if result.detail else ""
        print(f"{status} {result.name}{suffix}")
    failed = [r.name for r in results if not r.passed]
    print(f"selftest: {len(results)} suites, {len(failed)} failed"
          + (f" [{', '.join(failed)}]" if failed else ""))
    return 1 if failed else 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CalibrationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
