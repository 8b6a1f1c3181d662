#!/usr/bin/env python3
"""Prefix sweep over a corpus file: encode + solve per prefix, CSV out.

Thin driver over `minrep bench`; see that subcommand for column meanings.
"""

import argparse
import sys

sys.path.insert(0, "src")

from minrep.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("measure", choices=("gamma", "b", "g"))
    ap.add_argument("file")
    ap.add_argument("--prefixes", default="10,30,100,300,1000,3000")
    ap.add_argument("--csv", default=None)
    ap.add_argument("--time-limit", default=None)
    args = ap.parse_args()
    argv = ["bench", args.measure, args.file, "--prefixes", args.prefixes]
    if args.csv:
        argv += ["--csv", args.csv]
    if args.time_limit:
        argv += ["--time-limit", args.time_limit]
    return cli_main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
