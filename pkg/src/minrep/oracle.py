"""Brute-force ground truth for the three measures on small instances.

These searches are deliberately independent of the CNF pipeline: they
enumerate witness objects directly and validate them with the independent
verifiers, so that agreement between pipeline and oracle is meaningful.
"""

from __future__ import annotations

from itertools import combinations

from minrep.bms import BmsScheme, Copy, Ground, verify_bms
from minrep.slp import GrammarParsing, parsing_to_slp, verify_slp
from minrep.text import SubstringRef, Text


def brute_gamma(t: Text, max_n: int = 14) -> int:
    """Smallest hitting set over the covers of all minimal substrings."""
    if t.n > max_n:
        raise ValueError(f"n={t.n} exceeds brute_gamma bound {max_n}")
    covers = [frozenset(t.cover(r)) for r in t.minimal_substrings.entries]
    covers.sort(key=len)

    def covered(chosen: frozenset) -> bool:
        return all(c & chosen for c in covers)

    def dfs(chosen: set[int], budget: int) -> bool:
        open_covers = [c for c in covers if not (c & chosen)]
        if not open_covers:
            return True
        if budget == 0:
            return False
        pivot = min(open_covers, key=len)
        for i in sorted(pivot):
            chosen.add(i)
            if dfs(chosen, budget - 1):
                return True
            chosen.remove(i)
        return False

    for k in range(0, t.n + 1):
        if dfs(set(), k):
            return k
    raise AssertionError("unreachable: [1,n] is always an attractor")


def _compositions(n: int, m: int):
    """All ways to split [1,n] into m ordered nonempty phrase lengths."""
    for cuts in combinations(range(1, n), m - 1):
        bounds = (0,) + cuts + (n,)
        yield [bounds[k + 1] - bounds[k] for k in range(m)]


def brute_b(t: Text, max_n: int = 9) -> int:
    """Minimum size over all valid bidirectional macro schemes."""
    if t.n > max_n:
        raise ValueError(f"n={t.n} exceeds brute_b bound {max_n}")
    n = t.n
    data = t.data
    for m in range(1, n + 1):
        for lengths in _compositions(n, m):
            starts = [sum(lengths[:k]) + 1 for k in range(m)]

            def dfs(k: int, phrases: list) -> bool:
                if k == m:
                    return verify_bms(t, BmsScheme(phrases=phrases, n=n))
                s, ln = starts[k], lengths[k]
                content = data[s - 1 : s - 1 + ln]
                if ln == 1:
                    phrases.append(Ground(chr(content[0])))
                    if dfs(k + 1, phrases):
                        return True
                    phrases.pop()
                for src in range(1, n - ln + 2):
                    if src != s and data[src - 1 : src - 1 + ln] == content:
                        phrases.append(Copy(src, src + ln - 1))
                        if dfs(k + 1, phrases):
                            return True
                        phrases.pop()
                return False

            if dfs(0, []):
                return m
    raise AssertionError("unreachable: all-ground scheme is always valid")


def brute_g(t: Text, max_n: int = 9) -> int:
    """Minimum SLP size = (#factors of a valid grammar parsing) + sigma - 1."""
    if t.n > max_n:
        raise ValueError(f"n={t.n} exceeds brute_g bound {max_n}")
    n = t.n
    data = t.data
    if n == 1:
        return 1
    for m in range(1, n + 1):
        for lengths in _compositions(n, m):
            starts = [sum(lengths[:k]) + 1 for k in range(m)]
            boundary = set(starts) | {n + 1}
            factors = [SubstringRef(starts[k], lengths[k]) for k in range(m)]
            factor_ivs = {(r.start, r.length) for r in factors}

            # candidate source intervals per long factor
            options: list[list[tuple[int, int]]] = []
            feasible = True
            for r in factors:
                if r.length == 1:
                    continue
                cands = []
                for i2 in range(1, r.start - r.length + 1):
                    if (i2 in boundary and i2 + r.length in boundary
                            and (i2, r.length) not in factor_ivs
                            and data[i2 - 1 : i2 - 1 + r.length] == t.slice(r)):
                        cands.append((i2, r.length))
                if not cands:
                    feasible = False
                    break
                options.append(cands)
            if not feasible:
                continue

            gp = _pick_parsing(t, factors, options)
            if gp is not None:
                # cross-check: the witness must convert to a verifiable SLP
                slp = parsing_to_slp(t, gp)
                assert verify_slp(t, slp) and slp.size == m + t.sigma - 1
                return m + t.sigma - 1
    raise AssertionError("unreachable: all-unit factorization is always valid")


def _pick_parsing(t: Text, factors, options) -> GrammarParsing | None:
    """Reconstruct one laminar reference assignment as a GrammarParsing."""
    long_idx = [k for k, r in enumerate(factors) if r.length > 1]

    def laminar_ok(ivs):
        for a in range(len(ivs)):
            i1, l1 = ivs[a]
            for b in range(a + 1, len(ivs)):
                i2, l2 = ivs[b]
                if i2 < i1:
                    i1, l1, i2, l2 = i2, l2, i1, l1
                if i1 < i2 < i1 + l1 < i2 + l2:
                    return False
        return True

    def dfs(k, chosen):
        if k == len(options):
            return chosen
        for iv in options[k]:
            if laminar_ok(chosen + [iv]):
                out = dfs(k + 1, chosen + [iv])
                if out is not None:
                    return out
        return None

    chosen = dfs(0, [])
    if chosen is None:
        return None
    refs = {k: iv[0] for k, iv in zip(long_idx, chosen)}
    return GrammarParsing(factors=list(factors), refs=refs,
                          internal_nodes=set(chosen))
