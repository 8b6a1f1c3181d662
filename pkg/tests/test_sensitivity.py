"""Attractor edit-sensitivity: family checks and exhaustive small searches."""

import itertools

import pytest

from minrep.oracle import brute_gamma
from minrep.sensitivity import (
    SensitivityReport,
    _canonical,
    _edits,
    gamma_exact,
    sensitivity_search,
    verify_family,
)
from minrep.text import Text
from minrep.words import sensitivity_family


def test_verify_family_small_ks():
    # gamma(abbbaaa b^k) = 2; inserting 'c' after position 8 forces 5 once the
    # b-run is long enough (k >= 5), 4 below that
    for k in (2, 3, 4):
        assert verify_family(k) == (2, 4, 2.0)
    for k in (5, 6, 7):
        assert verify_family(k) == (2, 5, 2.5)


def test_family_attractors_explicit():
    from minrep.attractor import AttractorSet, verify_attractor

    for k in (3, 5, 7):
        t, tp = sensitivity_family(k)
        assert verify_attractor(Text(t), AttractorSet((5, 8)))
        assert verify_attractor(Text(tp), AttractorSet((1, 4, 6, 9, 10)))


def test_canonical_renaming():
    assert _canonical(b"bab") == b"aba"
    assert _canonical(b"zzxy") == b"aabc"
    assert _canonical(b"abc") == b"abc"


def test_edits():
    assert _edits(b"ab", "insert", b"ab") == {b"aab", b"bab", b"abb", b"aba"}
    assert _edits(b"ab", "delete", b"") == {b"a", b"b"}
    assert _edits(b"ab", "substitute", b"abc") == {b"bb", b"cb", b"aa", b"ac"}
    with pytest.raises(ValueError):
        _edits(b"ab", "rotate", b"ab")


def test_gamma_exact_routes():
    assert gamma_exact(b"banana") == 3
    assert gamma_exact(b"ab" * 10) == 2  # beyond the oracle cutoff: pipeline route


def exhaustive_best_ratio(n, alphabet, op, edit_syms):
    """Reference search without canonicalization or ordering tricks."""
    best = 0.0
    for tup in itertools.product(alphabet, repeat=n):
        t_bytes = bytes(tup)
        g0 = brute_gamma(Text(t_bytes))
        for tp in _edits(t_bytes, op, edit_syms):
            best = max(best, brute_gamma(Text(tp)) / g0)
    return best


@pytest.mark.parametrize("op", ["insert", "delete", "substitute"])
def test_search_matches_exhaustive_reference(op):
    n = 6
    rep = sensitivity_search(n, "ab", op, extra_symbol="c")
    assert rep.complete
    expect = exhaustive_best_ratio(n, b"ab", op, b"abc")
    assert rep.best_ratio == expect
    # the reported witness must actually achieve the reported ratio
    t, tp = (w.encode() for w in rep.witness)
    assert brute_gamma(Text(tp)) / brute_gamma(Text(t)) == rep.best_ratio
    assert rep.gamma_after / rep.gamma_before == rep.best_ratio


def test_budget_cutoff_reports_incomplete():
    rep = sensitivity_search(12, "ab", "insert", budget_s=0.0)
    assert not rep.complete


def test_csv_row():
    rep = SensitivityReport(op="insert", length=3, best_ratio=1.5,
                            witness=("aab", "caab"), gamma_before=2, gamma_after=3)
    assert rep.csv_row() == "3,insert,1.5,aab,caab,2,3"
