"""Search several rectangles R_a at one height, with and without the filter.

Prints the points found off the trivial lines and the time saved by the
filter. Both runs must agree; a disagreement raises.

    python3 scripts/search_rectangles.py --height 24 --a 1 4/11 5/7
"""

import argparse
import time

from rdlab.exact import parse_rational
from rdlab.search import SearchConfig, search_rectangle


def timed(cfg):
    start = time.monotonic()
    records, stats = search_rectangle(cfg)
    return records, stats, time.monotonic() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--height", type=int, default=24)
    parser.add_argument("--a", type=parse_rational, nargs="+", default=[parse_rational(s) for s in ("1", "4/11", "5/7")])
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    for a in args.a:
        filtered, stats, t1 = timed(SearchConfig(a, args.height, workers=args.workers))
        plain, _, t2 = timed(SearchConfig(a, args.height, use_filter=False, workers=args.workers))
        if filtered != plain:
            raise SystemExit(f"filter changed the result set for a = {a}")
        print(
            f"a={a} pairs={stats.total_pairs} pruned={stats.pruned_by_filter} "
            f"found={len(filtered)} filtered={t1:.1f}s unfiltered={t2:.1f}s"
        )
        for r in filtered:
            print(f"  ({r.x}, {r.y}) d={tuple(str(d) for d in r.distances)} v3x={r.v3x} v3z={r.v3z}")


if __name__ == "__main__":
    main()
