"""Witness envelope: serialization strictness and independent verification."""

import json

import pytest

from minrep.attractor import compute_gamma
from minrep.bms import compute_b
from minrep.slp import compute_g
from minrep.text import Text
from minrep.witness import (
    Witness,
    load_witness,
    make_witness,
    save_witness,
    verify_witness,
)


@pytest.fixture(scope="module")
def witnesses(backend):
    t = Text(b"abaababa")
    gamma, att, _ = compute_gamma(t, backend)
    b, scheme, _ = compute_b(t, backend)
    g, slp, _, _ = compute_g(t, backend)
    return t, {
        "gamma": make_witness("gamma", t, att),
        "b": make_witness("b", t, scheme),
        "g": make_witness("g", t, slp),
    }


@pytest.mark.parametrize("measure", ["gamma", "b", "g"])
def test_round_trip(witnesses, measure, tmp_path):
    t, ws = witnesses
    w = ws[measure]
    path = tmp_path / f"{measure}.json"
    save_witness(w, path)
    back = load_witness(path)
    assert back == w
    assert verify_witness(t, back)


def test_make_witness_unknown_measure():
    with pytest.raises(ValueError):
        make_witness("delta", Text(b"ab"), None)


def test_load_rejects_unknown_fields(witnesses, tmp_path):
    _, ws = witnesses
    path = tmp_path / "w.json"
    save_witness(ws["gamma"], path)
    doc = json.loads(path.read_text())
    doc["comment"] = "hello"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError):
        load_witness(path)


@pytest.mark.parametrize("field,value", [("schema", 2), ("measure", "z")])
def test_load_rejects_bad_header(witnesses, tmp_path, field, value):
    _, ws = witnesses
    path = tmp_path / "w.json"
    save_witness(ws["gamma"], path)
    doc = json.loads(path.read_text())
    doc[field] = value
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError):
        load_witness(path)


def test_verify_rejects_wrong_length(witnesses):
    _, ws = witnesses
    assert not verify_witness(Text(b"abaabab"), ws["gamma"])


def test_verify_rejects_size_mismatch(witnesses):
    t, ws = witnesses
    w = ws["gamma"]
    assert not verify_witness(t, Witness(w.measure, w.n, w.size + 1, w.payload))


def test_mutated_gamma_witness_rejected(witnesses):
    t, ws = witnesses
    w = ws["gamma"]
    positions = w.payload["positions"]
    mutated = Witness("gamma", w.n, w.size - 1,
                      {"positions": positions[:-1]})
    assert not verify_witness(t, mutated)


def test_mutated_b_witness_rejected(witnesses):
    t, ws = witnesses
    w = ws["b"]
    phrases = [dict(p) for p in w.payload["phrases"]]
    for p in phrases:
        if "copy" in p:
            p["copy"] = [p["copy"][0], p["copy"][1] - 1]
            break
    mutated = Witness("b", w.n, w.size, {"phrases": phrases})
    assert not verify_witness(t, mutated)


def test_mutated_g_witness_rejected(witnesses):
    t, ws = witnesses
    w = ws["g"]
    rules = [list(r) for r in w.payload["rules"]]
    for r in rules:
        if len(r) == 3:
            r[1], r[2] = r[2], r[1]  # swap children of one rule
            break
    mutated = Witness("g", w.n, w.size, {"rules": rules, "start": w.payload["start"]})
    assert not verify_witness(t, mutated)


def test_garbage_payload_rejected(witnesses):
    t, _ = witnesses
    assert not verify_witness(t, Witness("b", t.n, 2, {"phrases": [{"x": 1}]}))
    assert not verify_witness(t, Witness("g", t.n, 2, {"rules": [["X1"]], "start": "X1"}))
    assert not verify_witness(t, Witness("gamma", t.n, 1, {}))
