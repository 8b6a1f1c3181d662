"""Smallest bidirectional macro scheme via depth-layered reference forests.

A BMS factors T into ground phrases (one literal symbol) and copy phrases
that reference another interval of the text, such that chasing references
from any position terminates at a ground position.  Acyclicity is encoded by
giving every non-root position a depth d and a parent at depth d-1 in a
reference forest; depths range over [1, n-1] since a parent chain over n
nodes cannot be longer.

Variables: ROOT(i), DREF(d,i,j) for j in the match set of i, RP(i,j)
"position i copies position j", P(i) phrase boundaries (P(1) forced).
"""

from __future__ import annotations

from dataclasses import dataclass

from minrep.cnf import DREF, Formula, P, ROOT, RP
from minrep.solve import OPTIMUM, SolveResult, SolverBackend, solve
from minrep.text import Text


@dataclass(frozen=True)
class Ground:
    symbol: str  # single character

    @property
    def length(self) -> int:
        return 1


@dataclass(frozen=True)
class Copy:
    src_start: int  # 1-based, inclusive
    src_end: int

    @property
    def length(self) -> int:
        return self.src_end - self.src_start + 1


@dataclass
class BmsScheme:
    phrases: list[Ground | Copy]
    n: int

    @property
    def size(self) -> int:
        return len(self.phrases)


def encode_bms(t: Text) -> Formula:
    n = t.n
    match = t.match_sets
    f = Formula()
    pv = [0] * (n + 1)
    for i in range(1, n + 1):
        pv[i] = f.new_var(P, i)
    f.freeze_true(pv[1])
    rootv = [0] + [f.new_var(ROOT, i) for i in range(1, n + 1)]
    rpv: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        for j in match[i]:
            rpv[(i, j)] = f.new_var(RP, i, j)

    drefv: dict[tuple[int, int, int], int] = {}
    drefs_of: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(1, n + 1)}
    for d in range(1, n):
        for i in range(1, n + 1):
            for j in match[i]:
                v = f.new_var(DREF, d, i, j)
                drefv[(d, i, j)] = v
                drefs_of[i].append((d, i, j))

    # each node is a root or has exactly one (depth, parent)
    for i in range(1, n + 1):
        f.add_exactly_one([rootv[i]] + [drefv[k] for k in drefs_of[i]])

    # a parent at depth d-1 >= 1 must itself have a parent at depth d-2,
    # and a parent at depth 0 must be a root; together with the exactly-one
    # above this forces consistent depth labels, hence acyclicity
    for i in range(1, n + 1):
        for j in match[i]:
            f.add_implies([drefv[(1, i, j)]], [rootv[j]])
    for d in range(2, n):
        for i in range(1, n + 1):
            for j in match[i]:
                f.add_implies([drefv[(d, i, j)]],
                              [drefv[(d - 1, j, k)] for k in match[j]])

    # position-level references: at most one, implied by any forest edge
    for i in range(1, n + 1):
        f.add_at_most_one([rpv[(i, j)] for j in match[i]])
    for (d, i, j), v in drefv.items():
        f.add_implies([v], [rpv[(i, j)]])

    # roots are ground phrases: they start a phrase and reference nothing
    for i in range(1, n + 1):
        f.add_implies([rootv[i]], [pv[i]])
        for j in match[i]:
            f.add_implies([rootv[i]], [-rpv[(i, j)]])

    # phrase boundaries forced where the reference cannot continue a phrase
    for i in range(1, n + 1):
        for j in match[i]:
            if i == 1 or j == 1 or t.data[i - 2] != t.data[j - 2]:
                f.add_implies([rpv[(i, j)]], [pv[i]])
            else:
                # predecessor references elsewhere (or is ground) -> new phrase
                f.add_hard([rpv[(i - 1, j - 1)], -rpv[(i, j)], pv[i]])

    for i in range(1, n + 1):
        f.add_soft_not(pv[i])
    return f


def decode_bms(t: Text, formula: Formula, assignment: list[bool]) -> BmsScheme:
    n = t.n
    match = t.match_sets

    def val(tag, *payload):
        return assignment[formula.lookup(tag, *payload)]

    if not val(P, 1):
        raise ValueError("solver assignment invalid")
    starts = [i for i in range(1, n + 1) if val(P, i)]
    phrases: list[Ground | Copy] = []
    for k, s in enumerate(starts):
        end = starts[k + 1] if k + 1 < len(starts) else n + 1
        length = end - s
        if val(ROOT, s):
            if length != 1:
                raise ValueError("solver assignment invalid")
            phrases.append(Ground(chr(t.data[s - 1])))
            continue
        refs = [j for j in match[s] if val(RP, s, j)]
        if len(refs) != 1:
            raise ValueError("solver assignment invalid")
        j = refs[0]
        for u in range(length):
            i_u = s + u
            j_u = j + u
            if val(ROOT, i_u):
                raise ValueError("solver assignment invalid")
            if j_u > n or j_u not in match[i_u] or not val(RP, i_u, j_u):
                raise ValueError("solver assignment invalid")
        phrases.append(Copy(j, j + length - 1))
    return BmsScheme(phrases=phrases, n=n)


def verify_bms(t: Text, s: BmsScheme) -> bool:
    """Iterative-resolution decode: true iff the scheme reproduces T acyclically."""
    n = t.n
    if s.n != n or sum(p.length for p in s.phrases) != n:
        return False
    source = [0] * (n + 1)  # 0 = ground
    decoded: list[int | None] = [None] * (n + 1)
    pos = 1
    for p in s.phrases:
        if isinstance(p, Ground):
            if len(p.symbol) != 1:
                return False
            decoded[pos] = ord(p.symbol)
            pos += 1
        else:
            if not (1 <= p.src_start <= p.src_end <= n):
                return False
            for u in range(p.length):
                source[pos + u] = p.src_start + u
            pos += p.length
    remaining = [i for i in range(1, n + 1) if decoded[i] is None]
    while remaining:
        still = []
        for i in remaining:
            src = decoded[source[i]]
            if src is not None:
                decoded[i] = src
            else:
                still.append(i)
        if len(still) == len(remaining):
            return False  # no progress: reference cycle
        remaining = still
    return bytes(decoded[1:]) == t.data


def bms_witness_payload(s: BmsScheme) -> dict:
    out = []
    for p in s.phrases:
        if isinstance(p, Ground):
            out.append({"ground": p.symbol})
        else:
            out.append({"copy": [p.src_start, p.src_end]})
    return {"phrases": out}


def bms_from_payload(payload: dict, n: int) -> BmsScheme:
    phrases: list[Ground | Copy] = []
    for entry in payload["phrases"]:
        if set(entry) == {"ground"}:
            phrases.append(Ground(entry["ground"]))
        elif set(entry) == {"copy"}:
            i, j = entry["copy"]
            phrases.append(Copy(int(i), int(j)))
        else:
            raise ValueError(f"malformed phrase {entry!r}")
    return BmsScheme(phrases=phrases, n=n)


def compute_b(t: Text, backend: SolverBackend | None = None
              ) -> tuple[int, BmsScheme, SolveResult]:
    f = encode_bms(t)
    res = solve(f, backend)
    if res.status != OPTIMUM:
        raise RuntimeError(f"solver did not reach an optimum: {res.status} {res.detail}")
    assert res.assignment is not None and res.cost is not None
    scheme = decode_bms(t, f, res.assignment)
    if not verify_bms(t, scheme) or scheme.size != res.cost:
        raise RuntimeError("solver assignment invalid")
    return res.cost, scheme, res
