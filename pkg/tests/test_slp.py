"""Smallest SLP via grammar parsings: optima, decoding, verification."""

import pytest
from hypothesis import given, settings, strategies as st

from minrep.oracle import brute_g
from minrep.slp import (
    GrammarParsing,
    Slp,
    compute_g,
    encode_slp,
    parsing_to_slp,
    slp_from_payload,
    slp_witness_payload,
    verify_slp,
)
from minrep.text import SubstringRef, Text

# frozen from the independent brute-force oracle
KNOWN_G = [
    (b"a", 1),
    (b"ab", 3),
    (b"aaaa", 3),
    (b"abab", 4),
    (b"banana", 7),
    (b"abaababa", 6),
    (b"abbabaab", 7),
]


@pytest.mark.parametrize("s,expect", KNOWN_G)
def test_g_known_values(s, expect, backend):
    t = Text(s)
    size, slp, gp, _ = compute_g(t, backend)
    assert size == expect
    assert slp.size == expect
    assert verify_slp(t, slp)
    assert slp.size == gp.size + t.sigma - 1


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="ab", min_size=1, max_size=8))
def test_pipeline_matches_bruteforce(backend, s):
    t = Text.from_str(s)
    assert compute_g(t, backend)[0] == brute_g(t)


def test_grammar_parsing_invariants(backend):
    t = Text(b"abaababa")
    _, slp, gp, _ = compute_g(t, backend)
    # factors partition the text in order
    pos = 1
    for k, fac in enumerate(gp.factors):
        assert fac.start == pos
        pos += fac.length
        if fac.length > 1:
            assert k in gp.refs
            i2 = gp.refs[k]
            assert i2 + fac.length - 1 < fac.start  # strictly earlier, non-overlapping
            assert t.slice(SubstringRef(i2, fac.length)) == t.slice(fac)
    assert pos == t.n + 1


def test_verify_slp_accepts_and_rejects():
    t = Text(b"abab")
    ok = Slp(rules={"X1": "a", "X2": "b", "X3": ("X1", "X2"), "X4": ("X3", "X3")},
             start="X4")
    assert verify_slp(t, ok)
    # wrong expansion
    bad = Slp(rules={"X1": "a", "X2": "b", "X3": ("X1", "X2"), "X4": ("X3", "X1")},
              start="X4")
    assert not verify_slp(t, bad)
    # cyclic grammar must be rejected, not loop forever
    cyclic = Slp(rules={"X1": ("X2", "X2"), "X2": ("X1", "X1")}, start="X1")
    assert not verify_slp(t, cyclic)
    # undefined symbol
    dangling = Slp(rules={"X1": ("X1x", "X1x")}, start="X1")
    assert not verify_slp(t, dangling)


def test_parsing_to_slp_single_factor_text():
    t = Text(b"a")
    gp = GrammarParsing(factors=[SubstringRef(1, 1)], refs={}, internal_nodes=set())
    slp = parsing_to_slp(t, gp)
    assert slp.size == 1
    assert verify_slp(t, slp)


def test_witness_payload_round_trip(backend):
    t = Text(b"abaababa")
    _, slp, _, _ = compute_g(t, backend)
    payload = slp_witness_payload(slp)
    back = slp_from_payload(payload)
    assert back.rules == slp.rules and back.start == slp.start
    assert verify_slp(t, back)


def test_payload_validation():
    with pytest.raises(ValueError):
        slp_from_payload({"rules": [["X1", "ab"]], "start": "X1"})
    with pytest.raises(ValueError):
        slp_from_payload({"rules": [["X1"]], "start": "X1"})


def test_encoding_solves_repeats_cheaper_than_fresh(backend):
    # "abab" needs one fewer rule than "abcd": the repeat is shared
    g_rep = compute_g(Text(b"abab"), backend)[0]
    g_fresh = compute_g(Text(b"abcd"), backend)[0]
    assert g_rep < g_fresh


def test_g_unary_runs():
    for k in range(1, 9):
        t = Text(b"a" * k)
        size, slp, _, _ = compute_g(t)
        assert verify_slp(t, slp)
        if k <= 8:
            assert size == brute_g(t)
