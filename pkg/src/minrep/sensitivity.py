"""Edit sensitivity of the smallest-attractor size.

Exhaustively searches short strings for the worst-case ratio gamma(T')/gamma(T)
over single-edit pairs, and checks the explicit family T_k = abbbaaa b^k whose
insertion pair certifies a multiplicative sensitivity of at least 2.5.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from minrep.attractor import compute_gamma
from minrep.oracle import brute_gamma
from minrep.solve import SolverBackend
from minrep.text import Text
from minrep.words import sensitivity_family

ORACLE_MAX_N = 14


@dataclass
class SensitivityReport:
    op: str                      # insert | delete | substitute
    length: int
    best_ratio: float
    witness: tuple[str, str]     # (T, T') achieving the ratio
    gamma_before: int
    gamma_after: int
    complete: bool = True
    examined: int = 0

    def csv_row(self) -> str:
        t, tp = self.witness
        return (f"{self.length},{self.op},{self.best_ratio},{t},{tp},"
                f"{self.gamma_before},{self.gamma_after}")


CSV_HEADER = "n,op,ratio,T,T_prime,gamma_T,gamma_Tprime"


def gamma_exact(data: bytes, backend: SolverBackend | None = None) -> int:
    """Oracle-backed for small strings, MAX-SAT pipeline above that."""
    t = Text(data)
    if t.n <= ORACLE_MAX_N:
        return brute_gamma(t)
    return compute_gamma(t, backend)[0]


def _canonical(data: bytes) -> bytes:
    """Rename symbols to first-occurrence order; gamma only depends on the
    equality structure, so one representative per orbit suffices."""
    order: dict[int, int] = {}
    out = bytearray()
    for c in data:
        if c not in order:
            order[c] = ord("a") + len(order)
        out.append(order[c])
    return bytes(out)


def _edits(data: bytes, op: str, symbols: bytes) -> set[bytes]:
    n = len(data)
    out: set[bytes] = set()
    if op == "insert":
        for pos in range(n + 1):
            for s in symbols:
                out.add(data[:pos] + bytes([s]) + data[pos:])
    elif op == "delete":
        for pos in range(n):
            cand = data[:pos] + data[pos + 1 :]
            if cand:
                out.add(cand)
    elif op == "substitute":
        for pos in range(n):
            for s in symbols:
                if s != data[pos]:
                    out.add(data[:pos] + bytes([s]) + data[pos + 1 :])
    else:
        raise ValueError(f"unknown edit operation {op!r}")
    out.discard(data)
    return out


def sensitivity_search(n: int, alphabet: str = "ab", op: str = "insert",
                       extra_symbol: str | None = None,
                       budget_s: float | None = None,
                       backend: SolverBackend | None = None) -> SensitivityReport:
    """Max of gamma(T')/gamma(T) over all length-n strings (up to renaming)
    and all single edits; ties broken by lexicographically smallest witness."""
    base = alphabet.encode("latin-1")
    edit_syms = base + (extra_symbol.encode("latin-1") if extra_symbol else b"")
    start = time.monotonic()

    best = (0.0, b"", b"", 0, 0)
    examined = 0
    complete = True
    seen: set[bytes] = set()

    def enumerate_strings(prefix: bytearray):
        if len(prefix) == n:
            yield bytes(prefix)
            return
        for c in base:
            prefix.append(c)
            yield from enumerate_strings(prefix)
            prefix.pop()

    for t_bytes in enumerate_strings(bytearray()):
        canon = _canonical(t_bytes)
        if canon != t_bytes or canon in seen:
            continue
        seen.add(canon)
        if budget_s is not None and time.monotonic() - start > budget_s:
            complete = False
            break
        g0 = gamma_exact(t_bytes, backend)
        for tp in sorted(_edits(t_bytes, op, edit_syms)):
            g1 = gamma_exact(tp, backend)
            ratio = g1 / g0
            key = (ratio, t_bytes, tp)
            if ratio > best[0] or (ratio == best[0] and (t_bytes, tp) < best[1:3]):
                best = (ratio, t_bytes, tp, g0, g1)
            examined += 1

    ratio, t_bytes, tp, g0, g1 = best
    return SensitivityReport(
        op=op, length=n, best_ratio=ratio,
        witness=(t_bytes.decode("latin-1"), tp.decode("latin-1")),
        gamma_before=g0, gamma_after=g1,
        complete=complete, examined=examined,
    )


def verify_family(k: int, backend: SolverBackend | None = None
                  ) -> tuple[int, int, float]:
    """gamma before/after inserting the fresh symbol into abbbaaa b^k."""
    t, t_prime = sensitivity_family(k)
    g0 = gamma_exact(t, backend)
    g1 = gamma_exact(t_prime, backend)
    return g0, g1, g1 / g0
