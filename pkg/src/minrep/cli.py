"""Command-line interface: encode, solve, verify, stats, bench, oracle,
sensitivity.

Exit codes: 0 ok/valid witness, 1 invalid witness, 2 usage error,
3 solver resource breach (timeout / memory), 4 internal error.
"""

from __future__ import annotations

import argparse
import sys
import time

from minrep import attractor, bms, oracle, slp
from minrep.cnf import Formula
from minrep.sensitivity import CSV_HEADER, sensitivity_search
from minrep.solve import (ERROR, MEMLIMIT, OPTIMUM, TIMEOUT, ExternalProcessBackend,
                          MilpBackend, SolverBackend, default_backend, solve)
from minrep.text import Text
from minrep.witness import Witness, load_witness, make_witness, save_witness, verify_witness

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

MEASURES = ("gamma", "b", "g")


def _load_text(path: str) -> Text:
    try:
        return Text.from_file(path)
    except (OSError, ValueError) as exc:
        print(f"error: cannot read text from {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _encode(measure: str, t: Text, variant: str = "minimal") -> Formula:
    if measure == "gamma":
        return attractor.encode_attractor(t, variant)
    if measure == "b":
        return bms.encode_bms(t)
    return slp.encode_slp(t)


def _backend(args) -> SolverBackend:
    if getattr(args, "solver", None):
        return ExternalProcessBackend(command=args.solver,
                                      time_limit=args.time_limit,
                                      mem_limit_mb=args.mem_limit)
    be = default_backend()
    if isinstance(be, ExternalProcessBackend):
        be.time_limit = args.time_limit
        be.mem_limit_mb = args.mem_limit
    elif isinstance(be, MilpBackend):
        be.time_limit = args.time_limit
    return be


def cmd_encode(args) -> int:
    t = _load_text(args.file)
    f = _encode(args.measure, t, args.variant)
    fmt = "mse22" if args.format == "wcnf2022" else "classic"
    with open(args.output, "w") as fh:
        f.write_wcnf(fh, fmt=fmt)
    st = f.stats()
    print(f"{args.output}: {st.var_count} vars, {st.hard_count} hard, "
          f"{st.soft_count} soft, {st.total_literals} literals")
    return EXIT_OK


def cmd_solve(args) -> int:
    t = _load_text(args.file)
    if args.measure == "g" and t.n == 1:
        # single-character text: one terminal rule, no CNF needed
        value, s, gp, res = slp.compute_g(t)
        obj = s
    else:
        f = _encode(args.measure, t)
        res = solve(f, _backend(args))
        if res.status in (TIMEOUT, MEMLIMIT):
            print(f"status: {res.status}", file=sys.stderr)
            return EXIT_RESOURCE
        if res.status != OPTIMUM:
            print(f"status: {res.status} {res.detail}", file=sys.stderr)
            return EXIT_INTERNAL
        assert res.assignment is not None
        try:
            if args.measure == "gamma":
                obj = attractor.decode_attractor(t, res.assignment)
                ok = attractor.verify_attractor(t, obj)
            elif args.measure == "b":
                obj = bms.decode_bms(t, f, res.assignment)
                ok = bms.verify_bms(t, obj)
            else:
                gp = slp.decode_grammar_parsing(t, f, res.assignment)
                obj = slp.parsing_to_slp(t, gp)
                ok = slp.verify_slp(t, obj)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        value = obj.size
        expected = res.cost + (t.sigma - 1 if args.measure == "g" else 0)
        if not ok or value != expected:
            print("error: solver assignment invalid", file=sys.stderr)
            return EXIT_INTERNAL
    print(value)
    if args.json:
        save_witness(make_witness(args.measure, t, obj), args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    t = _load_text(args.file)
    try:
        w = load_witness(args.witness)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if w.measure != args.measure:
        print(f"error: witness is for measure {w.measure!r}", file=sys.stderr)
        return EXIT_INVALID
    if verify_witness(t, w):
        print("valid")
        return EXIT_OK
    print("invalid")
    return EXIT_INVALID


def cmd_stats(args) -> int:
    print("file,n,lrmin_count,rmin_count,lrmin_total,rmin_total")
    for path in args.files:
        t = _load_text(path)
        mins = t.minimal_substrings
        rmins = t.right_minimal_substrings
        print(f"{path},{t.n},{mins.count},{rmins.count},"
              f"{mins.total_length},{rmins.total_length}")
    return EXIT_OK


BENCH_HEADER = ("file,prefix,measure,value,status,encode_ms,solve_ms,"
                "vars,hard,soft,max_clause,total_literals")


def cmd_bench(args) -> int:
    data = _load_text(args.file).data
    prefixes = sorted({int(x) for x in args.prefixes.split(",")})
    rows = [BENCH_HEADER]
    for p in prefixes:
        if p > len(data):
            break
        t = Text(data[:p])
        t0 = time.monotonic()
        f = _encode(args.measure, t)
        encode_ms = 1000 * (time.monotonic() - t0)
        st = f.stats()
        t0 = time.monotonic()
        res = solve(f, _backend(args))
        solve_ms = 1000 * (time.monotonic() - t0)
        value = res.cost if res.status == OPTIMUM else ""
        if args.measure == "g" and value != "":
            value += t.sigma - 1
        rows.append(f"{args.file},{p},{args.measure},{value},{res.status},"
                    f"{encode_ms:.1f},{solve_ms:.1f},{st.var_count},{st.hard_count},"
                    f"{st.soft_count},{st.max_clause_len},{st.total_literals}")
        print(rows[-1])
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("\n".join(rows) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    t = Text.from_str(args.string)
    try:
        if args.measure == "gamma":
            print(oracle.brute_gamma(t))
        elif args.measure == "b":
            print(oracle.brute_b(t))
        else:
            print(oracle.brute_g(t))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    rep = sensitivity_search(args.n, args.alphabet, args.op,
                             extra_symbol=args.fresh, budget_s=args.budget)
    print(CSV_HEADER)
    print(rep.csv_row())
    if not rep.complete:
        print("warning: budget exceeded, report incomplete", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minrep",
                                 description="exact repetitiveness measures via MAX-SAT")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_solver_opts(p):
        p.add_argument("--solver", help="external solver command ({wcnf} placeholder)")
        p.add_argument("--time-limit", type=float, default=None, metavar="S")
        p.add_argument("--mem-limit", type=int, default=None, metavar="MB")

    p = sub.add_parser("encode", help="write the WCNF for a measure")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("file")
    p.add_argument("--variant", choices=("simple", "minimal"), default="minimal")
    p.add_argument("--format", choices=("wcnf", "wcnf2022"), default="wcnf")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("solve", help="compute a measure and its witness")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("file")
    add_solver_opts(p)
    p.add_argument("--json", help="write the witness JSON here")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="check a witness JSON against a text")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("file")
    p.add_argument("witness")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("stats", help="minimal-substring statistics as CSV")
    p.add_argument("files", nargs="+")
    p.add_argument("--minimal-substrings", action="store_true",
                   help="accepted for compatibility; statistics always include them")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("bench", help="prefix sweep with CNF statistics")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("file")
    p.add_argument("--prefixes", default="10,30,100,300,1000,3000")
    p.add_argument("--csv")
    add_solver_opts(p)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("oracle", help="brute-force a measure for a short string")
    p.add_argument("measure", choices=MEASURES)
    p.add_argument("string")
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("sensitivity", help="exhaustive single-edit gamma search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--op", choices=("insert", "delete", "substitute"), default="insert")
    p.add_argument("--fresh", default=None, help="extra symbol for insert/substitute")
    p.add_argument("--budget", type=float, default=None, metavar="S")
    p.set_defaults(fn=cmd_sensitivity)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
