"""Witness certificates: one JSON envelope for all three measures.

Envelope: {"schema": 1, "measure": "gamma"|"b"|"g", "n": ..., "size": ...,
"payload": {...}} with measure-specific payloads.  Loading is strict:
unknown fields and schema mismatches are rejected, and verification is
routed to the measure's independent verifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from minrep.attractor import AttractorSet, verify_attractor
from minrep.bms import BmsScheme, bms_from_payload, bms_witness_payload, verify_bms
from minrep.slp import Slp, slp_from_payload, slp_witness_payload, verify_slp
from minrep.text import Text

SCHEMA = 1
MEASURES = ("gamma", "b", "g")


@dataclass
class Witness:
    measure: str
    n: int
    size: int
    payload: dict

    def to_object(self) -> AttractorSet | BmsScheme | Slp:
        if self.measure == "gamma":
            return AttractorSet(tuple(sorted(self.payload["positions"])))
        if self.measure == "b":
            return bms_from_payload(self.payload, self.n)
        return slp_from_payload(self.payload)


def make_witness(measure: str, t: Text, obj) -> Witness:
    if measure == "gamma":
        payload = {"positions": list(obj.positions)}
    elif measure == "b":
        payload = bms_witness_payload(obj)
    elif measure == "g":
        payload = slp_witness_payload(obj)
    else:
        raise ValueError(f"unknown measure {measure!r}")
    return Witness(measure=measure, n=t.n, size=obj.size, payload=payload)


def save_witness(w: Witness, path) -> None:
    doc = {"schema": SCHEMA, "measure": w.measure, "n": w.n,
           "size": w.size, "payload": w.payload}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_witness(path) -> Witness:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("witness must be a JSON object")
    extra = set(doc) - {"schema", "measure", "n", "size", "payload"}
    if extra:
        raise ValueError(f"unknown witness fields: {sorted(extra)}")
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported witness schema {doc.get('schema')!r}")
    if doc.get("measure") not in MEASURES:
        raise ValueError(f"unknown measure {doc.get('measure')!r}")
    return Witness(measure=doc["measure"], n=int(doc["n"]),
                   size=int(doc["size"]), payload=doc["payload"])


def verify_witness(t: Text, w: Witness) -> bool:
    """Dispatch to the independent verifier; also checks n and size tags."""
    if w.n != t.n:
        return False
    try:
        obj = w.to_object()
    except (KeyError, ValueError, TypeError):
        return False
    if obj.size != w.size:
        return False
    if w.measure == "gamma":
        return verify_attractor(t, obj)
    if w.measure == "b":
        return verify_bms(t, obj)
    return verify_slp(t, obj)
