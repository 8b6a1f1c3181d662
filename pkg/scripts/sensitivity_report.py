#!/usr/bin/env python3
"""Exhaustive single-edit sensitivity search for the attractor size.

Writes one CSV row per searched length with the best ratio and its witness.
"""

import argparse
import sys

sys.path.insert(0, "src")

from minrep.sensitivity import CSV_HEADER, sensitivity_search, verify_family


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lengths", default="9,10,11")
    ap.add_argument("--alphabet", default="ab")
    ap.add_argument("--op", default="insert")
    ap.add_argument("--fresh", default="c")
    ap.add_argument("--budget", type=float, default=None)
    ap.add_argument("--family-k", type=int, default=None,
                    help="also check the abbbaaa b^k insertion family")
    args = ap.parse_args()
    if args.family_k is not None:
        g0, g1, ratio = verify_family(args.family_k)
        print(f"family k={args.family_k}: gamma {g0} -> {g1}, ratio {ratio}")
    print(CSV_HEADER)
    for n in (int(x) for x in args.lengths.split(",")):
        rep = sensitivity_search(n, args.alphabet, args.op,
                                 extra_symbol=args.fresh, budget_s=args.budget)
        print(rep.csv_row() + ("" if rep.complete else ",INCOMPLETE"), flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
