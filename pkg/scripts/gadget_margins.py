#!/usr/bin/env python3
"""Certified epsilon floors of the partition gadget on random instances."""

import argparse
import random
from fractions import Fraction

from divisikit.decomposability import decompose_eps
from divisikit.gadgets import certified_eps, partition_gadget
from divisikit.nptools import PartitionInstance, partition_oracle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--max-size", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    agree = 0
    print(f"{'elements':<22} {'oracle':>6} {'eps floor':>11} {'encoder':>7}")
    for _ in range(args.count):
        p = PartitionInstance(tuple(Fraction(rng.randint(1, 9)) for _ in range(rng.randint(2, args.max_size))))
        g = partition_gadget(p)
        eps = certified_eps(g)
        found = decompose_eps(g.dist, eps) is not None
        oracle = partition_oracle(p).answer
        agree += found == oracle
        els = ",".join(str(x) for x in p.elements)
        print(f"{els:<22} {str(oracle):>6} {float(eps):>11.3e} {str(found):>7}")
    print(f"agreement {agree}/{args.count}")


if __name__ == "__main__":
    main()
