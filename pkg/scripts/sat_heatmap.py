#!/usr/bin/env python3
"""Sign pattern of the clause blocks for every branch of a 1-in-3-SAT embedding.

Writes one CSV per requested branch and prints, per branch, which clause
blocks carry a negative entry. Defaults to the four-clause instance in
which every variable appears three times (unsatisfiable by parity).
"""

import argparse
import csv
import json
import os

from divisikit.io import sat_from_json
from divisikit.sat import PARITY_INSTANCE, assemble_family, clause_satisfied, heatmap, to_monotone


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("instance", nargs="?", help="SAT JSON file; default is the parity instance")
    ap.add_argument("--out-dir", default="heatmaps")
    ap.add_argument("--branches", type=int, nargs="*", default=[0])
    args = ap.parse_args()

    inst = PARITY_INSTANCE
    if args.instance:
        with open(args.instance, encoding="utf-8") as fh:
            inst = sat_from_json(json.load(fh))
    fam = assemble_family(to_monotone(inst))
    n_c = fam.inst.n_c
    print(f"dim {fam.dim}, {len(fam)} branches, delta {fam.delta}, spectral gap {fam.spectral_gap():.3g}")
    for i in range(len(fam)):
        m = fam.as_float(i)
        bad = [k for k in range(n_c) if m[2 * k:2 * k + 2, 2 * k:2 * k + 2].min() < 0]
        sat = [clause_satisfied(cl, fam.assignment(i)) for cl in fam.inst.clauses]
        grid = "".join("-" if k in bad else "+" for k in range(n_c))
        print(f"branch {i:3d} {fam.assignment(i)}  blocks {grid}  satisfied {sum(sat)}/{n_c}"
              f"{'  NONNEGATIVE' if fam.branch_is_nonnegative(i) else ''}")

    os.makedirs(args.out_dir, exist_ok=True)
    for b in args.branches:
        path = os.path.join(args.out_dir, f"branch_{b}.csv")
        with open(path, "w", newline="", encoding="utf-8") as fh:
            csv.writer(fh).writerows(heatmap(fam, b))
        print("wrote", path)


if __name__ == "__main__":
    main()
