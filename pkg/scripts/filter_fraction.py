"""Fraction of height-bounded (x, y) pairs excluded by the 3-adic filter.

The count uses the per-coordinate height max(|p|, q); other counting models
give different limits, so the output is a measurement under this model only.

    python3 scripts/filter_fraction.py --a 1 --heights 6 12 24 48 96
"""

import argparse

from rdlab.exact import parse_rational
from rdlab.search import filter_stats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a", type=parse_rational, default=parse_rational("1"))
    parser.add_argument("--heights", type=int, nargs="+", default=[6, 12, 24, 48, 96])
    args = parser.parse_args()

    print("height,total,pruned,fraction,decimal")
    for H in args.heights:
        s = filter_stats(args.a, H)
        f = s.pruned_fraction
        print(f"{H},{s.total_pairs},{s.pruned_by_filter},{f},{float(f):.6f}")


if __name__ == "__main__":
    main()
