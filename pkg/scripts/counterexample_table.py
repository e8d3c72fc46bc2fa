#!/usr/bin/env python3
"""Complete decompositions of the counterexample family against the n! lower bound."""

import argparse
import math
import time

from divisikit.decomposability import counterexample_family, enumerate_complete_decompositions


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--variant", choices=("standard", "extended"), default="standard")
    ap.add_argument("--limit", type=int, default=10000, help="stop after this many groupings")
    args = ap.parse_args()

    print(f"{'n':>3} {'width':>6} {'min coeff':>12} {'groupings':>10} {'n!':>6} {'seconds':>8}")
    for n in range(1, args.max_n + 1):
        d = counterexample_family(n, args.variant)
        t0 = time.perf_counter()
        res = enumerate_complete_decompositions(d, limit=args.limit)
        count = f"{len(res.groupings)}{'+' if res.truncated else ''}"
        print(f"{n:>3} {d.width:>6} {float(min(d.probs)):>12.4g} {count:>10} {math.factorial(n):>6} "
              f"{time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
