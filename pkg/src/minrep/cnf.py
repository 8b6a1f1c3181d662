"""Weighted CNF construction and DIMACS serialization.

A :class:`Formula` holds hard clauses plus unit soft clauses of the form
"not v" with weight 1, and a registry mapping semantic encoder variables to
dense solver ids.  Cardinality gadgets use the sequential (ladder) encoding,
which is linear in the number of inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

# registry tags
P = "P"          # position is counted (attractor element / factor start / phrase start)
F = "F"          # (i, l): T[i..i+l) is a parsing factor
REF = "REF"      # (i2, i, l): factor at i refers to the earlier copy at i2
Q = "Q"          # (i2, l): T[i2..i2+l) is a referenced internal interval
ROOT = "ROOT"    # (i,): position is a reference-forest root
DREF = "DREF"    # (d, i, j): i at depth d has parent j at depth d-1
RP = "RP"        # (i, j): position i copies position j
AUX = "AUX"      # cardinality-ladder helper

SemanticVar = tuple[str, tuple[int, ...]]


@dataclass(frozen=True)
class FormulaStats:
    var_count: int
    hard_count: int
    soft_count: int
    max_clause_len: int
    total_literals: int


class DuplicateVarError(ValueError):
    pass


class Formula:
    def __init__(self):
        self.var_count = 0
        self.hard: list[list[int]] = []
        self.soft: list[int] = []  # var ids v; each denotes the unit soft clause [-v]
        self.registry: dict[SemanticVar, int] = {}
        self.names: dict[int, SemanticVar] = {}
        self.frozen_true: set[int] = set()
        self.frozen_false: set[int] = set()

    # -- variables -----------------------------------------------------------

    def new_var(self, tag: str, *payload: int) -> int:
        sv: SemanticVar = (tag, tuple(payload))
        if tag != AUX and sv in self.registry:
            raise DuplicateVarError(f"variable {sv} already registered")
        self.var_count += 1
        vid = self.var_count
        if tag != AUX:
            self.registry[sv] = vid
        self.names[vid] = sv
        return vid

    def aux_var(self) -> int:
        return self.new_var(AUX, self.var_count + 1)

    def lookup(self, tag: str, *payload: int) -> int:
        return self.registry[(tag, tuple(payload))]

    def has_var(self, tag: str, *payload: int) -> bool:
        return (tag, tuple(payload)) in self.registry

    # -- clauses -------------------------------------------------------------

    def add_hard(self, clause: Iterable[int]) -> None:
        cl = list(clause)
        if not cl:
            raise ValueError("empty hard clause")
        for lit in cl:
            if lit == 0 or abs(lit) > self.var_count:
                raise ValueError(f"literal {lit} references an unallocated variable")
        self.hard.append(cl)

    def add_soft_not(self, var: int) -> None:
        if var < 1 or var > self.var_count:
            raise ValueError(f"unallocated variable {var}")
        self.soft.append(var)

    def freeze_true(self, var: int) -> None:
        self.add_hard([var])
        self.frozen_true.add(var)

    def freeze_false(self, var: int) -> None:
        self.add_hard([-var])
        self.frozen_false.add(var)

    def add_implies(self, antecedent: Iterable[int], consequent: Iterable[int]) -> None:
        """(a1 and a2 ...) -> (c1 or c2 ...), as a single clause."""
        self.add_hard([-a for a in antecedent] + list(consequent))

    def add_iff_and(self, x: int, lits: Iterable[int]) -> None:
        """x <-> conjunction of lits."""
        body = list(lits)
        for lit in body:
            self.add_hard([-x, lit])
        self.add_hard([x] + [-lit for lit in body])

    def add_iff_or(self, x: int, lits: Iterable[int]) -> None:
        """x <-> disjunction of lits."""
        body = list(lits)
        for lit in body:
            self.add_hard([-lit, x])
        self.add_hard([-x] + body)

    def add_at_most_one(self, vars: Iterable[int]) -> None:
        """Sequential (ladder) at-most-one: k-1 helper variables, O(k) clauses."""
        vs = list(vars)
        k = len(vs)
        if k <= 1:
            return
        prev = None
        for idx, v in enumerate(vs):
            if idx < k - 1:
                s = self.aux_var()
                self.add_hard([-v, s])
                if prev is not None:
                    self.add_hard([-prev, s])
            else:
                s = None
            if prev is not None:
                self.add_hard([-v, -prev])
            prev = s if s is not None else prev

    def add_exactly_one(self, vars: Iterable[int]) -> None:
        vs = list(vars)
        if not vs:
            raise ValueError("exactly-one over an empty set is unsatisfiable")
        self.add_hard(vs)
        self.add_at_most_one(vs)

    # -- stats / io ----------------------------------------------------------

    def stats(self) -> FormulaStats:
        lens = [len(c) for c in self.hard]
        return FormulaStats(
            var_count=self.var_count,
            hard_count=len(self.hard),
            soft_count=len(self.soft),
            max_clause_len=max(lens, default=0) if not self.soft else max(lens + [1]),
            total_literals=sum(lens) + len(self.soft),
        )

    @property
    def top_weight(self) -> int:
        return len(self.soft) + 1

    def write_wcnf(self, out: TextIO, fmt: str = "classic") -> None:
        """Serialize as DIMACS WCNF ('classic' p-line format or 'mse22')."""
        for vid in sorted(self.names):
            tag, payload = self.names[vid]
            if tag == AUX:
                continue
            idx = " ".join(str(x) for x in payload)
            out.write(f"c var {vid} {tag} {idx}\n".replace(" \n", "\n"))
        if fmt == "classic":
            top = self.top_weight
            out.write(f"p wcnf {self.var_count} {len(self.hard) + len(self.soft)} {top}\n")
            for cl in self.hard:
                out.write(f"{top} " + " ".join(map(str, cl)) + " 0\n")
            for v in self.soft:
                out.write(f"1 -{v} 0\n")
        elif fmt == "mse22":
            for cl in self.hard:
                out.write("h " + " ".join(map(str, cl)) + " 0\n")
            for v in self.soft:
                out.write(f"1 -{v} 0\n")
        else:
            raise ValueError(f"unknown wcnf format {fmt!r}")


@dataclass
class ParsedWcnf:
    var_count: int
    hard: list[list[int]]
    soft: list[tuple[int, list[int]]]  # (weight, clause)
    names: dict[int, SemanticVar]

    @property
    def top_weight(self) -> int:
        return sum(w for w, _ in self.soft) + 1


def parse_wcnf(inp: TextIO) -> ParsedWcnf:
    """Parse both the classic and the headerless 2022 WCNF dialects."""
    var_count = 0
    hard: list[list[int]] = []
    soft: list[tuple[int, list[int]]] = []
    names: dict[int, SemanticVar] = {}
    top: int | None = None
    pending: list[tuple[str, list[int]]] = []
    for line in inp:
        line = line.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) >= 3 and parts[1] == "var":
                names[int(parts[2])] = (parts[3], tuple(int(x) for x in parts[4:]))
            continue
        if line.startswith("p"):
            parts = line.split()
            if parts[1] != "wcnf":
                raise ValueError(f"unsupported problem line: {line}")
            var_count = int(parts[2])
            top = int(parts[4])
            continue
        parts = line.split()
        head, lits = parts[0], [int(x) for x in parts[1:]]
        if lits and lits[-1] == 0:
            lits = lits[:-1]
        pending.append((head, lits))
    for head, lits in pending:
        if head == "h":
            hard.append(lits)
        else:
            w = int(head)
            if top is not None and w >= top:
                hard.append(lits)
            else:
                soft.append((w, lits))
        for lit in lits:
            var_count = max(var_count, abs(lit))
    return ParsedWcnf(var_count=var_count, hard=hard, soft=soft, names=names)
