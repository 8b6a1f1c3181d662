"""Text substrate: minimal-substring sets, LPnF, LZ count, occurrences."""

import pytest
from hypothesis import given, settings, strategies as st

from minrep.text import (
    MinimalSubstringSet,
    SubstringRef,
    Text,
    distinct_substring_occurrences,
    minimal_substrings_bruteforce,
    right_minimal_substrings_bruteforce,
)

texts = st.text(alphabet="abcd", min_size=1, max_size=48).map(Text.from_str)


def substring_set(t: Text, ms: MinimalSubstringSet) -> set:
    return {t.slice(e) for e in ms.entries}


def test_substring_ref_validation():
    with pytest.raises(ValueError):
        SubstringRef(0, 1)
    with pytest.raises(ValueError):
        SubstringRef(1, 0)
    t = Text(b"abc")
    with pytest.raises(ValueError):
        t.slice(SubstringRef(3, 2))
    assert t.slice(SubstringRef(2, 2)) == b"bc"


@pytest.mark.parametrize("n", range(1, 10))
def test_minimal_substrings_exhaustive_binary(n):
    for code in range(2 ** n):
        d = bytes(b"ab"[(code >> i) & 1] for i in range(n))
        t = Text(d)
        assert substring_set(t, t.minimal_substrings) == minimal_substrings_bruteforce(d)
        assert substring_set(t, t.right_minimal_substrings) == \
            right_minimal_substrings_bruteforce(d)


@given(texts)
def test_minimal_substrings_match_bruteforce(t):
    assert substring_set(t, t.minimal_substrings) == minimal_substrings_bruteforce(t.data)


@given(texts)
def test_right_minimal_substrings_match_bruteforce(t):
    assert substring_set(t, t.right_minimal_substrings) == \
        right_minimal_substrings_bruteforce(t.data)


@given(texts)
def test_minimal_substring_entries_canonical(t):
    """Entries are sorted, deduplicated, at leftmost occurrences; stats agree."""
    for ms in (t.minimal_substrings, t.right_minimal_substrings):
        entries = ms.entries
        assert list(entries) == sorted(entries)
        seen = set()
        for e in entries:
            sub = t.slice(e)
            assert sub not in seen
            seen.add(sub)
            assert t.data.find(sub) == e.start - 1
        assert ms.count == len(entries)
        assert ms.total_length == sum(e.length for e in entries)


@given(texts)
def test_minimal_substrings_definition(t):
    """Every reported substring is strictly rarer than all proper substrings."""
    occ = distinct_substring_occurrences(t.data)
    for e in t.minimal_substrings.entries:
        sub = t.slice(e)
        if len(sub) > 1:
            assert occ[sub[:-1]] > occ[sub]
            assert occ[sub[1:]] > occ[sub]


@given(texts)
def test_length_one_always_minimal(t):
    subs = substring_set(t, t.minimal_substrings)
    for c in set(t.data):
        assert bytes([c]) in subs


def test_minimal_substrings_unary():
    # in c^n every run c^k is strictly rarer than c^{k-1}, so all runs qualify
    t = Text(b"aaaaa")
    assert substring_set(t, t.minimal_substrings) == \
        {b"a" * k for k in range(1, 6)}
    assert t.minimal_substrings.entries == \
        tuple(SubstringRef(1, k) for k in range(1, 6))


# -- LPnF / prefix occurrence ------------------------------------------------

def lpnf_bruteforce(data: bytes) -> list:
    n = len(data)
    out = [0] * (n + 1)
    for i in range(1, n + 1):
        best = 0
        for l in range(1, n - i + 2):
            if data.find(data[i - 1 : i - 1 + l], 0, i - 1) != -1:
                best = l
        out[i] = best
    return out


@given(texts)
def test_lpnf_matches_bruteforce(t):
    assert t.lpnf == lpnf_bruteforce(t.data)


@given(texts)
def test_occurs_in_prefix(t):
    for i in range(1, t.n + 1):
        for l in range(1, t.n - i + 2):
            expect = t.data.find(t.data[i - 1 : i - 1 + l], 0, i - 1) != -1
            assert t.occurs_in_prefix(SubstringRef(i, l)) == expect


# -- occurrences / cover / match sets / lce ----------------------------------

def test_occurrences_and_cover():
    t = Text(b"banana")
    ana = SubstringRef(2, 3)
    assert t.occurrences(ana) == [2, 4]
    assert t.cover(ana) == [2, 3, 4, 5, 6]
    assert t.occurrences(SubstringRef(1, 6)) == [1]


@given(texts)
def test_match_sets(t):
    for i in range(1, t.n + 1):
        expect = tuple(j for j in range(1, t.n + 1)
                       if j != i and t.data[j - 1] == t.data[i - 1])
        assert t.match_sets[i] == expect


@given(texts, st.data())
def test_lce(t, data):
    i = data.draw(st.integers(1, t.n))
    j = data.draw(st.integers(1, t.n))
    k = t.lce(i, j)
    assert t.data[i - 1 : i - 1 + k] == t.data[j - 1 : j - 1 + k]
    assert i + k > t.n or j + k > t.n or t.data[i + k - 1] != t.data[j + k - 1]


# -- LZ factor count ---------------------------------------------------------

@pytest.mark.parametrize("s,z", [
    (b"a", 1),
    (b"aaaa", 2),       # a | aaa (self-referencing)
    (b"abab", 3),       # a | b | ab
    (b"banana", 4),     # b | a | n | ana
    (b"abaababa", 5),
])
def test_lz_factor_count_known(s, z):
    assert Text(s).lz_factor_count == z


@given(texts)
def test_lz_factorization_valid(t):
    """Greedy parse: each factor is a fresh char or has an earlier occurrence."""
    z = t.lz_factor_count
    assert 1 <= z <= t.n
    if len(set(t.data)) == 1:
        assert z == (1 if t.n == 1 else 2)
