"""Shared fixtures/helpers: corpus lookup and solver backend selection."""

import os
from pathlib import Path

import pytest

from minrep.solve import default_backend, find_maxsat_binary

REPO = Path(__file__).resolve().parents[1]


def corpus_path(name: str):
    """Locate an external corpus file ($MINREP_CORPUS dir, then ./corpus)."""
    candidates = []
    env = os.environ.get("MINREP_CORPUS")
    if env:
        candidates.append(Path(env) / name)
    candidates.append(REPO / "corpus" / name)
    for c in candidates:
        if c.exists():
            return c
    return None


def require_corpus(name: str) -> Path:
    p = corpus_path(name)
    if p is None:
        pytest.skip(f"corpus file {name!r} not available; set MINREP_CORPUS "
                    f"or place it under {REPO / 'corpus'}")
    return p


@pytest.fixture(scope="session")
def backend():
    """The best available exact MaxSAT backend."""
    return default_backend()


@pytest.fixture(scope="session")
def native_solver():
    path = find_maxsat_binary()
    if path is None:
        pytest.skip("native MaxSAT solver not built (tools/maxsat)")
    return path
