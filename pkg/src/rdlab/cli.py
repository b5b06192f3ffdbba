"""Command-line entry point ``rdlab``.

Exit codes: 0 success, 2 invalid input, 3 point is not rational distance,
4 lift search exhausted, 5 lift search hit its node budget.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional

from rdlab.congruence import filter_verdict
from rdlab.exact import parse_rational, v3
from rdlab.geometry import Point, Rectangle, distance_report
from rdlab.lifting import (
    SearchBudgetExceeded,
    count_constrained,
    guy_constraint,
    lift_exists_to_depth,
    nondegenerate_three_and_one,
    rank_census,
    units_constraint,
)
from rdlab.parametrization import builtin_octic, load_parametrization, obstruction_check, verify_identity
from rdlab.poly import builtin_system
from rdlab.search import (
    SearchConfig,
    enumerate_rationals,
    filter_stats,
    gen_two_distance,
    search_header,
    search_rectangle,
    write_records,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_RATIONAL = 3
EXIT_EXHAUSTED = 4
EXIT_BUDGET = 5


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _val(v):
    return v if isinstance(v, int) else str(v)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2))


def cmd_check_point(args) -> int:
    rect = Rectangle(args.a)
    p = Point(args.x, args.y)
    report = distance_report(rect, p)
    verdict = filter_verdict(args.a, p.x, p.z)
    out = report.to_json()
    out.update(
        {
            "rational_distances": report.rational_count,
            "verdict": str(verdict),
            "v3x": _val(v3(p.x)),
            "v3z": _val(v3(p.z)),
        }
    )
    _dump(out)
    return EXIT_OK if report.complete else EXIT_NOT_RATIONAL


def cmd_search(args) -> int:
    cfg = SearchConfig(
        a=args.a,
        height=args.height,
        use_filter=not args.no_filter,
        exclude_trivial=not args.include_trivial,
        x_start=args.x_start,
        x_stop=args.x_stop,
        workers=args.workers,
    )
    records, stats = search_rectangle(cfg)
    header = search_header(cfg, len(enumerate_rationals(cfg.height)))
    if args.out:
        with open(args.out, "w") as fh:
            write_records(fh, records, header)
    else:
        write_records(sys.stdout, records, header)
    print(
        f"total={stats.total_pairs} pruned={stats.pruned_by_filter} checked={stats.checked} found={stats.found}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_filter_stats(args) -> int:
    if v3(args.a) != 0:
        print(f"# v3(a) = {v3(args.a)} != 0: only the equal-negative clause applies", file=sys.stderr)
    stats = filter_stats(args.a, args.height)
    print("total,pruned,fraction")
    print(f"{stats.total_pairs},{stats.pruned_by_filter},{stats.pruned_fraction}")
    return EXIT_OK


def _lift_system(args):
    if args.system == "scaled":
        raise ValueError("the scaled system is only defined modulo 3; use 'lift census'")
    sys_ = builtin_system(args.system, getattr(args, "a", None))
    constraint = guy_constraint if args.system == "three-and-one" else None
    return sys_, constraint


def cmd_lift_count(args) -> int:
    sys_, constraint = _lift_system(args)
    counts = count_constrained(sys_, constraint, args.levels)
    print("level,count,quotient")
    prev = None
    for k, c in enumerate(counts, 1):
        q = "" if prev in (None, 0) else str(Fraction(c, prev))
        print(f"{k},{c},{q}")
        prev = c
    return EXIT_OK


def cmd_lift_exist(args) -> int:
    sys_, constraint = _lift_system(args)
    reject = None
    if args.nondegenerate:
        if args.system != "three-and-one":
            raise ValueError("--nondegenerate only applies to three-and-one")
        reject = nondegenerate_three_and_one
    try:
        witness = lift_exists_to_depth(sys_, constraint, args.depth, budget=args.budget, reject=reject)
    except SearchBudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    if witness is None:
        print("no constrained solution lifts to the requested depth", file=sys.stderr)
        return EXIT_EXHAUSTED
    _dump(witness.to_json(sys_.name))
    return EXIT_OK


def cmd_lift_census(args) -> int:
    if args.system == "scaled":
        sys_, constraint = builtin_system("scaled"), units_constraint((1, 2, 3))
    elif args.system == "three-and-one":
        sys_, constraint = builtin_system("three-and-one"), guy_constraint
    else:
        sys_, constraint = builtin_system("two-dist-pair", args.a), None
    hist = rank_census(sys_, constraint)
    print("rank,count")
    for rank in sorted(hist):
        print(f"{rank},{hist[rank]}")
    return EXIT_OK


def _load_par(args):
    if getattr(args, "builtin", None) == "octic":
        return builtin_octic()
    if not args.file:
        raise ValueError("give --file PAR.json or --builtin octic")
    return load_parametrization(args.file)


def cmd_param_verify(args) -> int:
    rep = verify_identity(_load_par(args))
    _dump({"holds": rep.holds, "residuals": [{"t": t, "residual": str(r)} for t, r in rep.residuals]})
    return EXIT_OK


def cmd_param_obstruct(args) -> int:
    _dump(obstruction_check(_load_par(args)).to_json())
    return EXIT_OK


def cmd_gen_two_dist(args) -> int:
    print("x,y,r1,r2")
    for s in gen_two_distance(args.max_leg):
        print(f"{s.point.x},{s.point.y},{s.r1},{s.r2}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdlab", description="Rational-distance search and 3-adic lifting toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-point", help="distances from (x, y) to R_a and the filter verdict")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--x", type=_rational, required=True)
    p.add_argument("--y", type=_rational, required=True)
    p.set_defaults(func=cmd_check_point)

    p = sub.add_parser("search", help="bounded-height search for rational-distance points of R_a")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--height", type=_positive, required=True)
    p.add_argument("--no-filter", action="store_true")
    p.add_argument("--include-trivial", action="store_true")
    p.add_argument("--out")
    p.add_argument("--x-start", type=int, default=None, help="first x stratum (index into the sorted x list)")
    p.add_argument("--x-stop", type=int, default=None)
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("filter-stats", help="fraction of height-bounded pairs the filter excludes")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--height", type=_positive, required=True)
    p.set_defaults(func=cmd_filter_stats)

    lift = sub.add_parser("lift", help="solutions modulo powers of 3").add_subparsers(dest="lift_command", required=True)
    systems = ["three-and-one", "two-dist-pair", "scaled"]

    p = lift.add_parser("count")
    p.add_argument("--system", choices=systems, default="three-and-one")
    p.add_argument("--a", type=_rational, default=None)
    p.add_argument("--levels", type=_positive, required=True)
    p.set_defaults(func=cmd_lift_count)

    p = lift.add_parser("exist")
    p.add_argument("--system", choices=systems, default="three-and-one")
    p.add_argument("--a", type=_rational, default=None)
    p.add_argument("--depth", type=_positive, required=True)
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--nondegenerate", action="store_true", help="skip the T = 0 family (require v3(T) = 1)")
    p.set_defaults(func=cmd_lift_exist)

    p = lift.add_parser("census")
    p.add_argument("--system", choices=systems, required=True)
    p.add_argument("--a", type=_rational, default=None)
    p.set_defaults(func=cmd_lift_census)

    param = sub.add_parser("param", help="polynomial parametrizations").add_subparsers(dest="param_command", required=True)
    p = param.add_parser("verify")
    p.add_argument("--file")
    p.add_argument("--builtin", choices=["octic"])
    p.set_defaults(func=cmd_param_verify)
    p = param.add_parser("obstruct")
    p.add_argument("--file")
    p.add_argument("--builtin", choices=["octic"])
    p.set_defaults(func=cmd_param_obstruct)

    gen = sub.add_parser("gen", help="solution generators").add_subparsers(dest="gen_command", required=True)
    p = gen.add_parser("two-dist")
    p.add_argument("--max-leg", type=_positive, required=True)
    p.set_defaults(func=cmd_gen_two_dist)
    return parser


_NEGATIVE_RATIONAL = re.compile(r"^-\d+/\d+$")


def _attach_negative_values(argv: List[str]) -> List[str]:
    """argparse reads "-8/13" as a flag; rewrite "--x -8/13" as "--x=-8/13"."""
    out: List[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_RATIONAL.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_negative_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"rdlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
