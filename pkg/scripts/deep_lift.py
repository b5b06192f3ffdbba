"""Find 3-adic approximations to the three-and-one system to a given depth.

Reports both the first witness found (which may lie on the degenerate T = 0
family) and one with v3(T) = 1, each re-verified by plain integer arithmetic.

    python3 scripts/deep_lift.py --depth 100
"""

import argparse
import time

from rdlab.exact import v3
from rdlab.lifting import guy_constraint, lift_exists_to_depth, nondegenerate_three_and_one
from rdlab.poly import builtin_system


def residuals(X, Y, Z, T, U):
    return (
        2 * (Y**4 + T**4) + X**4 + Z**4 - 2 * (X**2 + Z**2) * (Y**2 + T**2),
        U**2 + Y**2 - X**2 - Z**2,
    )


def report(label, witness, depth, elapsed):
    entries = witness.entries
    vals = [v3(r) for r in residuals(*entries)]
    ok = all(r % 3**depth == 0 for r in residuals(*entries))
    print(f"{label}: verified={ok} seconds={elapsed:.3f} v3(T)={v3(entries[3])} residual valuations={vals}")
    for name, value in zip("XYZTU", entries):
        print(f"  {name} = {value}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--depth", type=int, default=100)
    parser.add_argument("--budget", type=int, default=None)
    args = parser.parse_args()

    system = builtin_system("three-and-one")
    for label, reject in (("first", None), ("nondegenerate", nondegenerate_three_and_one)):
        start = time.monotonic()
        w = lift_exists_to_depth(system, guy_constraint, args.depth, budget=args.budget, reject=reject)
        if w is None:
            print(f"{label}: no witness")
            continue
        report(label, w, args.depth, time.monotonic() - start)


if __name__ == "__main__":
    main()
