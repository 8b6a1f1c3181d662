"""Optimization backends for weighted CNF formulas.

Three interchangeable backends produce a provably optimal assignment:

* :class:`MilpBackend` (default): reduces the MAX-SAT instance to a 0/1
  integer program solved by HiGHS (via scipy).  Each hard clause becomes a
  covering inequality, each unit soft clause a unit objective term.
* :class:`ExhaustiveBackend`: branch-and-bound over the raw truth table with
  unit propagation; refuses formulas with more than 30 decision variables.
* :class:`ExternalProcessBackend`: runs a command speaking WCNF on input and
  MaxSAT-evaluation output (``o`` / ``s`` / ``v`` lines, legacy or 2022
  binary-string style) on stdout.  ``minrep-wcnf-solver`` is a bundled
  implementation of that contract.

Whatever the backend reports is re-checked against the formula; an assignment
that violates a hard clause or disagrees on cost yields an error result.
"""

from __future__ import annotations

import os
import resource
import shlex
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from minrep.cnf import AUX, Formula, ParsedWcnf, parse_wcnf

OPTIMUM = "optimum"
TIMEOUT = "timeout"
MEMLIMIT = "memlimit"
ERROR = "error"

DEFAULT_SOLVER_ENV = "MINREP_SOLVER"


@dataclass
class SolveResult:
    status: str
    cost: int | None = None
    assignment: list[bool] | None = None  # index 0 unused
    wall_time: float = 0.0
    peak_memory_estimate: int | None = None  # bytes, best effort
    detail: str = ""


@dataclass
class MilpBackend:
    time_limit: float | None = None


@dataclass
class ExhaustiveBackend:
    max_decision_vars: int = 30


@dataclass
class ExternalProcessBackend:
    command: str  # shell-style template with a {wcnf} placeholder
    time_limit: float | None = None
    mem_limit_mb: int | None = None


SolverBackend = MilpBackend | ExhaustiveBackend | ExternalProcessBackend


def find_maxsat_binary() -> str | None:
    """Locate the bundled CDCL-based solver (tools/maxsat) or one on PATH."""
    import pathlib
    import shutil

    exe = shutil.which("minrep-maxsat")
    if exe:
        return exe
    local = (pathlib.Path(__file__).resolve().parents[2]
             / "tools" / "maxsat" / "target" / "release" / "minrep-maxsat")
    if local.is_file() and os.access(local, os.X_OK):
        return str(local)
    return None


def default_backend() -> SolverBackend:
    cmd = os.environ.get(DEFAULT_SOLVER_ENV)
    if cmd:
        return ExternalProcessBackend(command=cmd)
    exe = find_maxsat_binary()
    if exe:
        return ExternalProcessBackend(command=f"{exe} {{wcnf}}")
    return MilpBackend()


def check_assignment(f: Formula, assignment: list[bool]) -> tuple[bool, int]:
    """Exact evaluation: (all hard clauses satisfied, #falsified soft clauses)."""
    for cl in f.hard:
        if not any(assignment[l] if l > 0 else not assignment[-l] for l in cl):
            return False, 0
    return True, sum(1 for v in f.soft if assignment[v])


def solve(f: Formula, backend: SolverBackend | None = None) -> SolveResult:
    backend = backend or default_backend()
    start = time.monotonic()
    if isinstance(backend, MilpBackend):
        res = _solve_milp(f.var_count, f.hard, [(1, [-v]) for v in f.soft], backend.time_limit)
    elif isinstance(backend, ExhaustiveBackend):
        res = _solve_exhaustive(f, backend)
    elif isinstance(backend, ExternalProcessBackend):
        res = _solve_external(f, backend)
    else:
        raise TypeError(f"unknown backend {backend!r}")
    res.wall_time = time.monotonic() - start
    if res.status == OPTIMUM:
        assert res.assignment is not None
        hard_ok, falsified = check_assignment(f, res.assignment)
        if not hard_ok:
            return SolveResult(status=ERROR, detail="solver assignment violates a hard clause",
                               wall_time=res.wall_time)
        if res.cost != falsified:
            return SolveResult(status=ERROR, wall_time=res.wall_time,
                               detail=f"solver cost {res.cost} != recomputed {falsified}")
    return res


# -- MILP route --------------------------------------------------------------

def _solve_milp(var_count: int, hard: list[list[int]],
                soft: list[tuple[int, list[int]]],
                time_limit: float | None) -> SolveResult:
    # variables: x_1..x_V in {0,1}, plus one relaxation var per non-unit soft clause
    relax: list[tuple[int, list[int]]] = []  # (column, clause) for relaxed softs
    ncols = var_count
    obj = np.zeros(var_count, dtype=float)
    extra_obj: list[float] = []
    rows_data: list[tuple[list[int], list[float], float]] = []

    for cl in hard:
        cols = [abs(l) - 1 for l in cl]
        coef = [1.0 if l > 0 else -1.0 for l in cl]
        lb = 1.0 - sum(1 for l in cl if l < 0)
        rows_data.append((cols, coef, lb))
    for w, cl in soft:
        if len(cl) == 1:
            l = cl[0]
            if l < 0:
                obj[-l - 1] += w
            else:
                obj[l - 1] -= w  # reward; constant offset fixed after solve
        else:
            col = ncols
            ncols += 1
            extra_obj.append(float(w))
            relax.append((col, cl))
            cols = [abs(l) - 1 for l in cl] + [col]
            coef = [1.0 if l > 0 else -1.0 for l in cl] + [1.0]
            lb = 1.0 - sum(1 for l in cl if l < 0)
            rows_data.append((cols, coef, lb))

    c = np.concatenate([obj, np.array(extra_obj)]) if extra_obj else obj
    offset = sum(w for w, cl in soft if len(cl) == 1 and cl[0] > 0)

    if rows_data:
        data, ri, ci = [], [], []
        lbs = []
        for r, (cols, coef, lb) in enumerate(rows_data):
            for col, a in zip(cols, coef):
                ri.append(r)
                ci.append(col)
                data.append(a)
            lbs.append(lb)
        amat = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows_data), ncols))
        constraints = [LinearConstraint(amat, np.array(lbs), np.full(len(lbs), np.inf))]
    else:
        constraints = []

    options: dict = {"mip_rel_gap": 0.0}
    if time_limit is not None:
        options["time_limit"] = time_limit
    res = milp(c=c, constraints=constraints, integrality=np.ones(ncols),
               bounds=Bounds(0, 1), options=options)
    if res.status == 1:
        return SolveResult(status=TIMEOUT, detail="milp hit its iteration/time limit")
    if res.status != 0 or res.x is None:
        return SolveResult(status=ERROR, detail=f"milp status {res.status}: {res.message}")
    x = res.x
    assignment = [False] * (var_count + 1)
    for v in range(1, var_count + 1):
        assignment[v] = x[v - 1] > 0.5
    cost = int(round(res.fun + offset))
    return SolveResult(status=OPTIMUM, cost=cost, assignment=assignment)


# -- exhaustive route --------------------------------------------------------

def _solve_exhaustive(f: Formula, backend: ExhaustiveBackend) -> SolveResult:
    decision = sum(1 for (tag, _) in f.registry if tag != AUX)
    if decision > backend.max_decision_vars:
        return SolveResult(status=ERROR,
                           detail=f"{decision} decision variables exceed the exhaustive "
                                  f"backend limit of {backend.max_decision_vars}")
    nv = f.var_count
    soft_mark = [False] * (nv + 1)
    for v in f.soft:
        soft_mark[v] = True
    hard = [tuple(cl) for cl in f.hard]

    best_cost = len(f.soft) + 1
    best_assign: list[int] | None = None
    # assign[v]: -1 unknown, 0 false, 1 true
    assign = [-1] * (nv + 1)

    def propagate(trail: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for cl in hard:
                unassigned = 0
                last = 0
                sat = False
                for l in cl:
                    val = assign[abs(l)]
                    if val == -1:
                        unassigned += 1
                        last = l
                    elif (val == 1) == (l > 0):
                        sat = True
                        break
                if sat:
                    continue
                if unassigned == 0:
                    return False
                if unassigned == 1:
                    v = abs(last)
                    assign[v] = 1 if last > 0 else 0
                    trail.append(v)
                    changed = True
        return True

    def current_cost() -> int:
        return sum(1 for v in f.soft if assign[v] == 1)

    def dfs(next_var: int) -> None:
        nonlocal best_cost, best_assign
        trail: list[int] = []
        if not propagate(trail):
            for v in trail:
                assign[v] = -1
            return
        if current_cost() >= best_cost:
            for v in trail:
                assign[v] = -1
            return
        v = next_var
        while v <= nv and assign[v] != -1:
            v += 1
        if v > nv:
            cost = current_cost()
            if cost < best_cost:
                best_cost = cost
                best_assign = assign[:]
            for u in trail:
                assign[u] = -1
            return
        for val in (0, 1):  # false first: soft clauses prefer false
            assign[v] = val
            dfs(v + 1)
            assign[v] = -1
        for u in trail:
            assign[u] = -1

    sys.setrecursionlimit(max(10000, nv * 4))
    dfs(1)
    if best_assign is None:
        return SolveResult(status=ERROR, detail="hard clauses unsatisfiable")
    return SolveResult(status=OPTIMUM, cost=best_cost,
                       assignment=[bool(x == 1) for x in best_assign])


# -- external process route --------------------------------------------------

def _solve_external(f: Formula, backend: ExternalProcessBackend) -> SolveResult:
    with tempfile.NamedTemporaryFile("w", suffix=".wcnf", delete=False) as tmp:
        f.write_wcnf(tmp)
        path = tmp.name
    try:
        argv = [a.replace("{wcnf}", path) for a in shlex.split(backend.command)]
        if "{wcnf}" not in backend.command:
            argv.append(path)
        preexec = None
        if backend.mem_limit_mb is not None:
            limit = backend.mem_limit_mb * 1024 * 1024

            def preexec():  # noqa: F811 - child-side only
                resource.setrlimit(resource.RLIMIT_AS, (limit, limit))

        before = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
        try:
            proc = subprocess.run(argv, capture_output=True, text=True,
                                  timeout=backend.time_limit, preexec_fn=preexec)
        except subprocess.TimeoutExpired:
            return SolveResult(status=TIMEOUT, detail="external solver wall-clock limit")
        except FileNotFoundError as exc:
            return SolveResult(status=ERROR, detail=f"solver not found: {exc}")
        after = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
        mem = max(after - before, after if before == 0 else 0) * 1024 or None
        parsed = _parse_solver_output(proc.stdout, f.var_count)
        if parsed is None:
            if backend.mem_limit_mb is not None and proc.returncode != 0:
                return SolveResult(status=MEMLIMIT, peak_memory_estimate=mem,
                                   detail="external solver died under the memory ceiling")
            return SolveResult(status=ERROR, peak_memory_estimate=mem,
                               detail=f"malformed solver output (rc={proc.returncode}): "
                                      f"{proc.stdout[:200]!r} {proc.stderr[:200]!r}")
        cost, assignment = parsed
        return SolveResult(status=OPTIMUM, cost=cost, assignment=assignment,
                           peak_memory_estimate=mem)
    finally:
        os.unlink(path)


def _parse_solver_output(text: str, var_count: int) -> tuple[int, list[bool]] | None:
    cost: int | None = None
    status: str | None = None
    vlits: list[int] = []
    vbits: str | None = None
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("o "):
            try:
                cost = int(line.split()[1])
            except (IndexError, ValueError):
                return None
        elif line.startswith("s "):
            status = line[2:].strip()
        elif line == "v" or line.startswith("v "):
            body = line[1:].strip()
            if body and set(body.replace(" ", "")) <= {"0", "1"} and "-" not in body:
                vbits = (vbits or "") + body.replace(" ", "")
            else:
                vlits.extend(int(x) for x in body.split())
    if status != "OPTIMUM FOUND" or cost is None:
        return None
    assignment = [False] * (var_count + 1)
    if vbits is not None:
        for i, bit in enumerate(vbits[:var_count], start=1):
            assignment[i] = bit == "1"
    else:
        for l in vlits:
            if l != 0 and abs(l) <= var_count:
                assignment[abs(l)] = l > 0
    return cost, assignment


# -- bundled WCNF solver (the ExternalProcess contract, self-hosted) ---------

def solver_main(argv: list[str] | None = None) -> int:
    """CLI entry point: read a WCNF file, print MaxSAT-evaluation output."""
    import argparse

    ap = argparse.ArgumentParser(prog="minrep-wcnf-solver",
                                 description="MaxSAT solver over 0/1 integer programming")
    ap.add_argument("wcnf", help="input file (classic or 2022 WCNF)")
    ap.add_argument("--binary-model", action="store_true",
                    help="print the v-line as a 2022-style 0/1 string")
    ap.add_argument("--time-limit", type=float, default=None)
    args = ap.parse_args(argv)

    with open(args.wcnf) as fh:
        parsed = parse_wcnf(fh)
    res = _solve_milp(parsed.var_count, parsed.hard, parsed.soft, args.time_limit)
    print(f"c minrep-wcnf-solver: {parsed.var_count} vars, "
          f"{len(parsed.hard)} hard, {len(parsed.soft)} soft")
    if res.status != OPTIMUM:
        print(f"s UNKNOWN")
        print(f"c {res.detail}")
        return 1
    assert res.assignment is not None
    print(f"o {res.cost}")
    print("s OPTIMUM FOUND")
    if args.binary_model:
        print("v " + "".join("1" if res.assignment[v] else "0"
                             for v in range(1, parsed.var_count + 1)))
    else:
        lits = [v if res.assignment[v] else -v for v in range(1, parsed.var_count + 1)]
        print("v " + " ".join(map(str, lits)))
    return 0


if __name__ == "__main__":
    raise SystemExit(solver_main())
