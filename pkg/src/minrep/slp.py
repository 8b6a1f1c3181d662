"""Smallest straight-line program via grammar parsings.

A grammar parsing is the factorization of T induced by a partial parse tree:
each factor of length >= 2 references an earlier interval of factors that
expands to the same string, and the referenced intervals form a laminar
family.  The weighted CNF minimizes the number of factors; the SLP size is
then (#factors) + sigma - 1.

Variables: P(i) factor boundaries (P(1) and P(n+1) forced), F(i,l) "T[i..i+l)
is a factor", REF(i2,i,l) "the factor at i is a copy of the interval at i2",
Q(i2,l) "the interval at i2 is referenced by some factor".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from minrep.cnf import F, Formula, P, Q, REF
from minrep.solve import OPTIMUM, SolveResult, SolverBackend, solve
from minrep.text import SubstringRef, Text


@dataclass
class GrammarParsing:
    factors: list[SubstringRef]           # partition of [1, n], in order
    refs: dict[int, int]                  # factor index (0-based) -> source start i2
    internal_nodes: set[tuple[int, int]]  # (i2, l) text intervals with Q true

    @property
    def size(self) -> int:
        return len(self.factors)


@dataclass
class Slp:
    rules: dict[str, tuple[str, str] | str]  # X -> (Y, Z) or X -> 1-char terminal
    start: str

    @property
    def size(self) -> int:
        return len(self.rules)


def encode_slp(t: Text) -> Formula:
    n = t.n
    f = Formula()
    pv = [0] * (n + 2)
    for i in range(1, n + 2):
        pv[i] = f.new_var(P, i)
    f.freeze_true(pv[1])
    f.freeze_true(pv[n + 1])

    fv: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        for l in range(1, n + 2 - i):
            v = f.new_var(F, i, l)
            fv[(i, l)] = v
            body = [pv[i]] + [-pv[j] for j in range(i + 1, i + l)] + [pv[i + l]]
            f.add_iff_and(v, body)

    # reference variables: source i2 + l <= i and matching content
    refs_by_target: dict[tuple[int, int], list[int]] = {}
    refs_by_source: dict[tuple[int, int], list[int]] = {}
    for i2 in range(1, n):
        for i in range(i2 + 1, n + 1):
            max_l = min(t.lce(i2, i), i - i2, n + 1 - i)
            for l in range(2, max_l + 1):
                v = f.new_var(REF, i2, i, l)
                refs_by_target.setdefault((i, l), []).append(v)
                refs_by_source.setdefault((i2, l), []).append(v)
                f.add_implies([v], [fv[(i, l)]])

    for i in range(1, n + 1):
        for l in range(2, n + 2 - i):
            targets = refs_by_target.get((i, l))
            if not t.occurs_in_prefix(SubstringRef(i, l)):
                # a first occurrence can never be a factor
                f.freeze_false(fv[(i, l)])
            else:
                assert targets, "occurrence in prefix implies a reference candidate"
                f.add_implies([fv[(i, l)]], targets)
            if targets:
                f.add_at_most_one(targets)

    qv: dict[tuple[int, int], int] = {}
    for (i2, l), sources in sorted(refs_by_source.items()):
        v = f.new_var(Q, i2, l)
        qv[(i2, l)] = v
        f.add_iff_or(v, sources)
        f.add_implies([v], [-fv[(i2, l)]])
        f.add_implies([v], [pv[i2]])
        f.add_implies([v], [pv[i2 + l]])

    # laminarity: no two referenced intervals may properly overlap
    keys = sorted(qv)
    for a in range(len(keys)):
        i1, l1 = keys[a]
        for b in range(a + 1, len(keys)):
            i2, l2 = keys[b]
            if i1 < i2 < i1 + l1 < i2 + l2:
                f.add_hard([-qv[(i1, l1)], -qv[(i2, l2)]])

    for i in range(1, n + 1):
        f.add_soft_not(pv[i])
    return f


def decode_grammar_parsing(t: Text, formula: Formula,
                           assignment: list[bool]) -> GrammarParsing:
    """Decode and validate a satisfying assignment of the SLP formula."""
    n = t.n

    def val(tag, *payload):
        return assignment[formula.lookup(tag, *payload)]

    if not (val(P, 1) and val(P, n + 1)):
        raise ValueError("solver assignment invalid")
    starts = [i for i in range(1, n + 1) if val(P, i)]
    factors = []
    for k, s in enumerate(starts):
        end = starts[k + 1] if k + 1 < len(starts) else n + 1
        factors.append(SubstringRef(s, end - s))

    # factor flags must mirror the boundaries exactly
    factor_set = {(r.start, r.length) for r in factors}
    for (tag, payload), vid in formula.registry.items():
        if tag == F and assignment[vid] != (payload in factor_set):
            raise ValueError("solver assignment invalid")

    refs: dict[int, int] = {}
    active_refs: dict[tuple[int, int], list[int]] = {}
    for (tag, payload), vid in formula.registry.items():
        if tag == REF and assignment[vid]:
            i2, i, l = payload
            if (i, l) not in factor_set:
                raise ValueError("solver assignment invalid")
            active_refs.setdefault((i, l), []).append(i2)
    for k, r in enumerate(factors):
        if r.length == 1:
            continue
        sources = active_refs.get((r.start, r.length), [])
        if len(sources) != 1:
            raise ValueError("solver assignment invalid")
        i2 = sources[0]
        if i2 + r.length > r.start or t.slice(r) != t.slice(SubstringRef(i2, r.length)):
            raise ValueError("solver assignment invalid")
        refs[k] = i2

    internal = set()
    for (tag, payload), vid in formula.registry.items():
        if tag == Q and assignment[vid]:
            internal.add(payload)
    # every reference target must be an active internal node, and vice versa
    targets = {(i2, factors[k].length) for k, i2 in refs.items()}
    if targets != internal:
        raise ValueError("solver assignment invalid")
    boundary = {r.start for r in factors} | {n + 1}
    for i2, l in internal:
        if i2 not in boundary or i2 + l not in boundary or (i2, l) in factor_set:
            raise ValueError("solver assignment invalid")
    nodes = sorted(internal)
    for a in range(len(nodes)):
        i1, l1 = nodes[a]
        for b in range(a + 1, len(nodes)):
            i2, l2 = nodes[b]
            if i1 < i2 < i1 + l1 < i2 + l2:
                raise ValueError("solver assignment invalid")
    return GrammarParsing(factors=factors, refs=refs, internal_nodes=internal)


def parsing_to_slp(t: Text, gp: GrammarParsing) -> Slp:
    """Build an explicit SLP of size |factors| + sigma - 1 (left-leaning combs)."""
    m = len(gp.factors)
    alphabet = t.alphabet
    term_name = {c: f"X{k + 1}" for k, c in enumerate(alphabet)}
    rules: dict[str, tuple[str, str] | str] = {
        term_name[c]: chr(c) for c in alphabet
    }
    if m == 1:
        # single unit factor: the terminal rule itself is the whole program
        only = term_name[t.data[0]]
        return Slp(rules={only: rules[only]}, start=only)

    start_to_idx = {r.start: k for k, r in enumerate(gp.factors)}
    # map text intervals to factor-index intervals [lo, hi] inclusive
    node_ivs = []
    for i2, l in sorted(gp.internal_nodes):
        lo = start_to_idx[i2]
        hi = start_to_idx.get(i2 + l, m) - 1 if i2 + l <= t.n else m - 1
        node_ivs.append((lo, hi))
    root = (0, m - 1)
    if root not in node_ivs:
        node_ivs.append(root)

    # laminar family -> containment tree; children sorted by position
    node_ivs.sort(key=lambda iv: (iv[0], -(iv[1])))
    children: dict[tuple[int, int], list] = {iv: [] for iv in node_ivs}
    stack: list[tuple[int, int]] = []
    for iv in node_ivs:
        while stack and not (stack[-1][0] <= iv[0] and iv[1] <= stack[-1][1]):
            stack.pop()
        if stack:
            children[stack[-1]].append(iv)
        stack.append(iv)

    counter = [len(alphabet)]

    def fresh() -> str:
        counter[0] += 1
        return f"X{counter[0]}"

    iv_name: dict[tuple[int, int], str] = {}

    def leaf_name(k: int) -> str:
        r = gp.factors[k]
        if r.length == 1:
            return term_name[t.data[r.start - 1]]
        i2 = gp.refs[k]
        return iv_name[(start_to_idx[i2], start_to_idx.get(i2 + r.length, m) - 1
                        if i2 + r.length <= t.n else m - 1)]

    def build(iv: tuple[int, int]) -> str:
        lo, hi = iv
        parts: list[str] = []
        kids = children[iv]
        ki = 0
        k = lo
        while k <= hi:
            if ki < len(kids) and kids[ki][0] == k:
                parts.append(build(kids[ki]))
                k = kids[ki][1] + 1
                ki += 1
            else:
                parts.append(leaf_name(k))
                k += 1
        # left-leaning comb over the parts
        cur = parts[0]
        for nxt in parts[1:]:
            name = fresh()
            rules[name] = (cur, nxt)
            cur = name
        iv_name[iv] = cur
        return cur

    # children before parents is guaranteed because references point left;
    # build() recurses into kids first, so a single root call suffices
    start = build(root)
    return Slp(rules=rules, start=start)


def verify_slp(t: Text, s: Slp) -> bool:
    """Well-formed, acyclic, and the start symbol expands to exactly T."""
    rules = s.rules
    if s.start not in rules:
        return False
    for name, rhs in rules.items():
        if isinstance(rhs, str):
            if len(rhs) != 1:
                return False
        elif not (isinstance(rhs, tuple) and len(rhs) == 2
                  and rhs[0] in rules and rhs[1] in rules):
            return False

    lengths: dict[str, int] = {}
    state: dict[str, int] = {}  # 1 = in progress, 2 = done

    def length(name: str) -> int | None:
        if state.get(name) == 1:
            return None  # cycle
        if name in lengths:
            return lengths[name]
        state[name] = 1
        rhs = rules[name]
        if isinstance(rhs, str):
            ln = 1
        else:
            a = length(rhs[0])
            b = length(rhs[1])
            if a is None or b is None or a + b > t.n:
                return None
            ln = a + b
        state[name] = 2
        lengths[name] = ln
        return ln

    if length(s.start) != t.n:
        return False

    expansion: dict[str, bytes] = {}

    def expand(name: str) -> bytes:
        if name in expansion:
            return expansion[name]
        rhs = rules[name]
        out = rhs.encode("latin-1") if isinstance(rhs, str) else expand(rhs[0]) + expand(rhs[1])
        expansion[name] = out
        return out

    return expand(s.start) == t.data


def slp_witness_payload(s: Slp) -> dict:
    rules = []
    for name in sorted(s.rules, key=lambda x: -int(x[1:])):
        rhs = s.rules[name]
        if isinstance(rhs, str):
            rules.append([name, f"'{rhs}'"])
        else:
            rules.append([name, rhs[0], rhs[1]])
    return {"rules": rules, "start": s.start}


def slp_from_payload(payload: dict) -> Slp:
    rules: dict[str, tuple[str, str] | str] = {}
    for entry in payload["rules"]:
        if len(entry) == 2:
            name, term = entry
            if not (term.startswith("'") and term.endswith("'") and len(term) == 3):
                raise ValueError(f"malformed terminal rule {entry!r}")
            rules[name] = term[1]
        elif len(entry) == 3:
            rules[entry[0]] = (entry[1], entry[2])
        else:
            raise ValueError(f"malformed rule {entry!r}")
    return Slp(rules=rules, start=payload["start"])


def compute_g(t: Text, backend: SolverBackend | None = None
              ) -> tuple[int, Slp, GrammarParsing, SolveResult]:
    if t.n == 1:
        gp = GrammarParsing(factors=[SubstringRef(1, 1)], refs={}, internal_nodes=set())
        slp = parsing_to_slp(t, gp)
        return 1, slp, gp, SolveResult(status=OPTIMUM, cost=1, assignment=[False, True])
    f = encode_slp(t)
    res = solve(f, backend)
    if res.status != OPTIMUM:
        raise RuntimeError(f"solver did not reach an optimum: {res.status} {res.detail}")
    assert res.assignment is not None and res.cost is not None
    gp = decode_grammar_parsing(t, f, res.assignment)
    if gp.size != res.cost:
        raise RuntimeError("solver assignment invalid")
    slp = parsing_to_slp(t, gp)
    if not verify_slp(t, slp) or slp.size != gp.size + t.sigma - 1:
        raise RuntimeError("solver assignment invalid")
    return slp.size, slp, gp, res
