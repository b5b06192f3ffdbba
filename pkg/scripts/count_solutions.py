"""Count constrained solutions of the three-and-one system modulo 3^k.

Prints level, count and quotient, then total time and peak memory. Seed
progress goes to stderr.

    python3 scripts/count_solutions.py --levels 5
"""

import argparse
import resource
import sys
import time
from fractions import Fraction

from rdlab.lifting import count_constrained, guy_constraint
from rdlab.poly import builtin_system


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--levels", type=int, default=5)
    args = parser.parse_args()

    system = builtin_system("three-and-one")
    start = time.monotonic()

    def progress(done, total):
        print(f"# seed {done}/{total} at {time.monotonic() - start:.1f} s", file=sys.stderr)

    counts = count_constrained(system, guy_constraint, args.levels, progress=progress)
    peak_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print("level,count,quotient")
    prev = None
    for k, c in enumerate(counts, 1):
        q = "" if prev is None else str(Fraction(c, prev))
        print(f"{k},{c},{q}")
        prev = c
    print(f"# total {time.monotonic() - start:.1f} s, peak rss {peak_mb:.0f} MB")


if __name__ == "__main__":
    main()
