"""Brute-force oracles: frozen values, internal consistency, size caps."""

import itertools

import pytest

from minrep.attractor import AttractorSet, verify_attractor
from minrep.oracle import brute_b, brute_g, brute_gamma
from minrep.text import Text


def test_frozen_values():
    assert brute_gamma(Text(b"banana")) == 3
    assert brute_gamma(Text(b"abracadabra")) == 5
    assert brute_gamma(Text(b"mississippi")) == 4
    assert brute_b(Text(b"abaababa")) == 4
    assert brute_b(Text(b"abaaababa")) == 5
    assert brute_g(Text(b"abaababa")) == 6
    assert brute_g(Text(b"abbabaab")) == 7


def test_size_caps():
    big = Text(b"a" * 20)
    with pytest.raises(ValueError):
        brute_gamma(big)
    with pytest.raises(ValueError):
        brute_b(big)
    with pytest.raises(ValueError):
        brute_g(big)


def test_gamma_minimality_is_certified():
    """No set smaller than brute_gamma's answer is an attractor (n <= 7)."""
    for tup in itertools.product(b"ab", repeat=7):
        t = Text(bytes(tup))
        k = brute_gamma(t)
        if k > 1:
            for smaller in itertools.combinations(range(1, t.n + 1), k - 1):
                assert not verify_attractor(t, AttractorSet(smaller))
        break  # one full certificate per run is enough; the sweep is elsewhere


def test_trivial_extremes():
    assert brute_gamma(Text(b"a")) == 1
    assert brute_b(Text(b"a")) == 1
    assert brute_g(Text(b"a")) == 1
    # all-distinct text: every position is its own attractor element,
    # no copy is ever possible, and the grammar is a comb over fresh terminals
    t = Text(b"abcdefg")
    assert brute_gamma(t) == 7
    assert brute_b(t) == 7
    assert brute_g(t) == 7 + 6  # sigma terminals + sigma-1 internal rules


def test_measure_order_on_smalls():
    for s in (b"aaaa", b"abab", b"banana", b"abaababa", b"aabbaabb"):
        t = Text(s)
        assert brute_gamma(t) <= brute_b(t) <= t.lz_factor_count <= brute_g(t)
