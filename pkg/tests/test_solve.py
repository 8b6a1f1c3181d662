"""Solver backends: optimality agreement, statuses, output parsing."""

import random
import sys

import pytest

from minrep import cnf
from minrep.cnf import Formula
from minrep.solve import (
    ERROR,
    OPTIMUM,
    TIMEOUT,
    ExhaustiveBackend,
    ExternalProcessBackend,
    MilpBackend,
    _parse_solver_output,
    check_assignment,
    solve,
    solver_main,
)


def random_formula(seed: int, nv: int = 8, ncl: int = 12) -> Formula:
    rng = random.Random(seed)
    f = Formula()
    vs = [f.new_var(cnf.P, i) for i in range(nv)]
    for _ in range(ncl):
        k = rng.randint(1, 3)
        cl = [rng.choice(vs) * rng.choice((1, -1)) for _ in range(k)]
        f.add_hard(cl)
    for v in vs:
        f.add_soft_not(v)
    return f


def brute_optimum(f: Formula):
    """Reference optimum by raw enumeration (independent of the backends)."""
    best = None
    for code in range(2 ** f.var_count):
        assign = [False] + [(code >> i) & 1 == 1 for i in range(f.var_count)]
        ok, cost = check_assignment(f, assign)
        if ok and (best is None or cost < best):
            best = cost
    return best


@pytest.mark.parametrize("seed", range(25))
def test_backends_agree_with_enumeration(seed, backend):
    f = random_formula(seed)
    expect = brute_optimum(f)
    for be in (MilpBackend(), ExhaustiveBackend(), backend):
        res = solve(f, be)
        if expect is None:
            assert res.status == ERROR, be
        else:
            assert res.status == OPTIMUM, (be, res.detail)
            assert res.cost == expect, be
            ok, cost = check_assignment(f, res.assignment)
            assert ok and cost == expect


def test_check_assignment():
    f = Formula()
    a, b = f.new_var(cnf.P, 0), f.new_var(cnf.P, 1)
    f.add_hard([a, b])
    f.add_soft_not(a)
    f.add_soft_not(b)
    assert check_assignment(f, [False, True, False]) == (True, 1)
    assert check_assignment(f, [False, True, True]) == (True, 2)
    assert check_assignment(f, [False, False, False])[0] is False


def test_exhaustive_refuses_large_formulas():
    f = Formula()
    for i in range(31):
        f.new_var(cnf.P, i)
    res = solve(f, ExhaustiveBackend(max_decision_vars=30))
    assert res.status == ERROR
    assert "exceed" in res.detail


def test_external_missing_binary():
    f = random_formula(0, nv=3, ncl=2)
    res = solve(f, ExternalProcessBackend(command="/nonexistent/solver {wcnf}"))
    assert res.status == ERROR


def test_external_timeout():
    f = random_formula(0, nv=3, ncl=2)
    res = solve(f, ExternalProcessBackend(command="sh -c 'sleep 30' {wcnf}",
                                          time_limit=0.3))
    assert res.status == TIMEOUT


def test_external_malformed_output():
    f = random_formula(0, nv=3, ncl=2)
    res = solve(f, ExternalProcessBackend(command="true"))
    assert res.status == ERROR
    assert "malformed" in res.detail


def test_parse_solver_output_legacy_and_binary():
    legacy = "c comment\no 2\ns OPTIMUM FOUND\nv 1 -2 3 0\n"
    assert _parse_solver_output(legacy, 3) == (2, [False, True, False, True])
    binary = "o 2\ns OPTIMUM FOUND\nv 101\n"
    assert _parse_solver_output(binary, 3) == (2, [False, True, False, True])
    assert _parse_solver_output("s UNSATISFIABLE\n", 3) is None
    assert _parse_solver_output("o 2\n", 3) is None


def test_solver_cost_recheck_rejects_lies(monkeypatch):
    """A backend reporting a wrong cost must surface as an error, not a lie."""
    import importlib

    solve_mod = importlib.import_module("minrep.solve")
    real_milp = solve_mod._solve_milp
    f = random_formula(1, nv=4, ncl=3)

    def lying_milp(var_count, hard, soft, time_limit):
        res = real_milp(var_count, hard, soft, time_limit)
        res.cost = (res.cost or 0) + 1
        return res

    monkeypatch.setattr(solve_mod, "_solve_milp", lying_milp)
    res = solve(f, MilpBackend())
    assert res.status == ERROR
    assert "recomputed" in res.detail


def test_bundled_solver_cli(tmp_path, capsys):
    f = random_formula(3)
    expect = brute_optimum(f)
    path = tmp_path / "inst.wcnf"
    with open(path, "w") as fh:
        f.write_wcnf(fh)
    rc = solver_main([str(path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert f"o {expect}" in out
    assert "s OPTIMUM FOUND" in out
    parsed = _parse_solver_output(out, f.var_count)
    assert parsed is not None and parsed[0] == expect
    ok, cost = check_assignment(f, parsed[1])
    assert ok and cost == expect


def test_bundled_solver_as_external_backend(tmp_path):
    f = random_formula(1)  # satisfiable seed
    cmd = f"{sys.executable} -m minrep.solve {{wcnf}}"
    res = solve(f, ExternalProcessBackend(command=cmd))
    assert res.status == OPTIMUM
    assert res.cost == brute_optimum(f)


def test_native_solver_matches(native_solver):
    for seed in range(10):
        f = random_formula(seed, nv=10, ncl=18)
        expect = brute_optimum(f)
        res = solve(f, ExternalProcessBackend(command=f"{native_solver} {{wcnf}}"))
        if expect is None:
            assert res.status == ERROR
        else:
            assert (res.status, res.cost) == (OPTIMUM, expect)
