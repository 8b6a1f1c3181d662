"""Smallest-string-attractor computation via weighted CNF.

An attractor is a set of positions hitting at least one occurrence of every
substring.  The encoding has one variable per text position; each substring
(or, in the default reduced variant, each minimal substring — sufficient
because every substring contains a minimal one whose cover it includes)
contributes one hard clause "some covered position is picked", and each
position a weight-1 soft clause "not picked".
"""

from __future__ import annotations

from dataclasses import dataclass

from minrep.cnf import Formula, P
from minrep.solve import OPTIMUM, SolveResult, SolverBackend, solve
from minrep.text import SubstringRef, Text


@dataclass(frozen=True)
class AttractorSet:
    positions: tuple[int, ...]  # sorted, 1-based

    @property
    def size(self) -> int:
        return len(self.positions)


def encode_attractor(t: Text, variant: str = "minimal") -> Formula:
    """One P-variable per position, one cover clause per (minimal) substring."""
    f = Formula()
    pvars = [0] + [f.new_var(P, i) for i in range(1, t.n + 1)]
    if variant == "minimal":
        subs = t.minimal_substrings.entries
    elif variant == "simple":
        subs = tuple(_all_distinct_substrings(t))
    else:
        raise ValueError(f"unknown attractor variant {variant!r}")
    for ref in sorted(subs):
        f.add_hard(sorted(pvars[i] for i in t.cover(ref)))
    for i in range(1, t.n + 1):
        f.add_soft_not(pvars[i])
    return f


def decode_attractor(t: Text, assignment: list[bool]) -> AttractorSet:
    f_lookup = assignment  # index 0 unused; P vars are ids 1..n by construction
    return AttractorSet(tuple(i for i in range(1, t.n + 1) if f_lookup[i]))


def verify_attractor(t: Text, g: AttractorSet) -> bool:
    """Independent check: every minimal substring's cover intersects the set.

    For small texts (n <= 1000) an exhaustive sweep over all distinct
    substrings is run as well; the two must agree.
    """
    pos = set(g.positions)
    if not all(1 <= i <= t.n for i in pos):
        return False
    ok = all(any(i in pos for i in t.cover(ref)) for ref in t.minimal_substrings.entries)
    if t.n <= 1000:
        full = all(
            any(i in pos for i in t.cover(ref)) for ref in _all_distinct_substrings(t)
        )
        assert ok == full, "minimal-substring check disagrees with the exhaustive check"
    return ok


def _all_distinct_substrings(t: Text):
    """One canonical SubstringRef per distinct substring, via automaton classes."""
    for s, ln_short, _ in t._automaton.class_heads():
        for ln in range(ln_short, _class_max_length(t, s, ln_short) + 1):
            yield SubstringRef(s + 1, ln)


def _class_max_length(t: Text, start0: int, min_len: int) -> int:
    # longest extension sharing the same end-position set: walk the automaton
    # is overkill; occurrence counts are monotone, so binary search suffices.
    sam = t._automaton
    target = sam.count_occurrences(t.data[start0 : start0 + min_len])
    lo, hi = min_len, t.n - start0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if sam.count_occurrences(t.data[start0 : start0 + mid]) == target:
            lo = mid
        else:
            hi = mid - 1
    return lo


def attractor_witness_payload(g: AttractorSet) -> dict:
    return {"positions": list(g.positions)}


def compute_gamma(t: Text, backend: SolverBackend | None = None,
                  variant: str = "minimal") -> tuple[int, AttractorSet, SolveResult]:
    f = encode_attractor(t, variant)
    res = solve(f, backend)
    if res.status != OPTIMUM:
        raise RuntimeError(f"solver did not reach an optimum: {res.status} {res.detail}")
    assert res.assignment is not None and res.cost is not None
    att = decode_attractor(t, res.assignment)
    if not verify_attractor(t, att) or att.size != res.cost:
        raise RuntimeError("solver assignment invalid")
    return res.cost, att, res
