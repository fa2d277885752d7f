"""Walk through the optimal-strength structure on OneMax.

The expected one-step gain of an r-bit flip at relative distance p has the
n-free form A(r, p, 1-p). For each odd r there is an interval of p where
that strength beats both neighbours, and the interval endpoints are the
crossings A(r, p) = A(r+2, p). This script prints the first few intervals,
checks the two endpoints that have closed forms, and shows how quickly the
crossings crowd toward p = 1/2.
"""

import argparse
import math

from driftopt import approx_drift_closed, cutoff_point, strength_intervals


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-r", type=int, default=21,
                        help="largest strength to tabulate (odd)")
    args = parser.parse_args()

    print("optimality intervals of the n-free drift maximizer")
    print(f"{'r':>5} {'left':>13} {'right':>13} {'drift(left)':>13} "
          f"{'drift(right)':>13}")
    for s in strength_intervals(args.max_r):
        print(f"{s.r:>5} {s.p_left:>13.9f} {s.p_right:>13.9f} "
              f"{s.a_left:>13.9f} {s.a_right:>13.9f}")

    print()
    print("two endpoints have closed forms, a useful sanity anchor:")
    left3 = 1 / 3
    print(f"  r=3 takes over from r=1 at p = 1/3        "
          f"(table: {strength_intervals(3)[0].p_left:.12f})")
    r35 = cutoff_point(3, 5)
    print(f"  r=5 takes over from r=3 at 1 - sqrt(40)/10 = "
          f"{1 - math.sqrt(40) / 10:.12f} (table: {r35.p0:.12f})")

    print()
    print("the crossings approach 1/2; a few far-out ones:")
    prev = None
    for r in (101, 1001, 4001, 8001):
        cp = cutoff_point(r, r + 2, bracket_low=prev)
        gap = 0.5 - cp.p0
        drift = approx_drift_closed(r, cp.p0)
        print(f"  r={r:>5}: crossing at {cp.p0:.9f} "
              f"(1/2 - {gap:.2e}), drift there {drift:.6f}")
        prev = cp.p0
    print()
    print(f"  single flips stay optimal for all p < {left3:.6f}, which is")
    print("  why RLS is hard to beat until the last third of the distance.")


if __name__ == "__main__":
    main()
