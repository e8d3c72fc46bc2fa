#!/usr/bin/env python3
"""Run the acceptance sweeps and write a summary table.

    python scripts/run_sweeps.py                 # all ten criteria
    python scripts/run_sweeps.py -c 1 6 --seed 3 --out results/sweeps.json
"""

import argparse
import json
import sys

from divisikit.sweeps import SWEEPS, run_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-c", "--criteria", type=int, nargs="*", default=sorted(SWEEPS))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="optional JSON file for the results")
    args = ap.parse_args()

    rows = []
    for c in args.criteria:
        r = run_sweep(c, args.seed)
        print(r.line(), flush=True)
        rows.append({"criterion": c, "name": r.name, "passed": r.passed, "detail": r.detail,
                     "seconds": round(r.seconds, 2)})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"seed": args.seed, "results": rows}, fh, indent=2)
    return 0 if all(r["passed"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
