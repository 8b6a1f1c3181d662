#!/usr/bin/env python3
"""Output-size table for the morphic word families.

Computes gamma (and optionally b, g) for fibonacci/thuemorse/perioddoubling/
paperfold words and prints a CSV: family.k,n,gamma[,b][,g].
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from minrep.attractor import compute_gamma
from minrep.bms import compute_b
from minrep.slp import compute_g
from minrep.text import Text
from minrep.words import morphic_word


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--families", default="fibonacci,thuemorse,perioddoubling,paperfold")
    ap.add_argument("--max-k", type=int, default=5)
    ap.add_argument("--measures", default="gamma", help="comma list from gamma,b,g")
    args = ap.parse_args()
    measures = args.measures.split(",")
    print("word,n," + ",".join(f"{m},{m}_s" for m in measures))
    for family in args.families.split(","):
        for k in range(args.max_k + 1):
            name = f"{family}.{k:02d}"
            t = Text(morphic_word(f"{family}.{k}"))
            cells = []
            for m in measures:
                t0 = time.monotonic()
                if m == "gamma":
                    val = compute_gamma(t)[0]
                elif m == "b":
                    val = compute_b(t)[0]
                elif m == "g":
                    val = compute_g(t)[0]
                else:
                    raise SystemExit(f"unknown measure {m}")
                cells.append(f"{val},{time.monotonic() - t0:.2f}")
            print(f"{name},{t.n}," + ",".join(cells), flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
