"""Generators for the morphic word families and test fixture strings.

Naming convention: ``<family>.<k>`` denotes the k-th word of the sequence,
e.g. fibonacci.05 is the 13-character Fibonacci word.
"""

from __future__ import annotations


def fibonacci_word(k: int) -> bytes:
    """F_0 = a, F_1 = ab, F_k = F_{k-1} F_{k-2}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    a, b = b"a", b"ab"
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, b + a
    return b


def _flip(c: int) -> int:
    return ord("b") if c == ord("a") else ord("a")


def thue_morse_word(k: int) -> bytes:
    """T_0 = a, T_k = T_{k-1} . complement(T_{k-1}); length 2^k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    w = b"a"
    for _ in range(k):
        w = w + bytes(_flip(c) for c in w)
    return w


def period_doubling_word(k: int) -> bytes:
    """P_0 = a, P_k = P_{k-1} . P_{k-1}[:-1] . flip(last); length 2^k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    w = b"a"
    for _ in range(k):
        w = w + w[:-1] + bytes([_flip(w[-1])])
    return w


_PF_MAP = {b"11": b"1101", b"01": b"1001", b"10": b"1100", b"00": b"1000"}


def paper_folding_word(k: int) -> bytes:
    """A_0 = 11, A_k = phi(A_{k-1}) with phi applied to symbol pairs; length 2^{k+1}.

    Emitted over {a, b} with 1 -> a and 0 -> b.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    w = b"11"
    for _ in range(k):
        w = b"".join(_PF_MAP[w[i : i + 2]] for i in range(0, len(w), 2))
    return w.replace(b"1", b"a").replace(b"0", b"b")


_FAMILIES = {
    "fibonacci": fibonacci_word,
    "thuemorse": thue_morse_word,
    "perioddoubling": period_doubling_word,
    "paperfold": paper_folding_word,
}


def morphic_word(name: str) -> bytes:
    """Resolve a '<family>.<k>' name, e.g. 'fibonacci.05'."""
    try:
        family, k = name.rsplit(".", 1)
        return _FAMILIES[family](int(k))
    except (ValueError, KeyError) as exc:
        raise ValueError(f"unknown morphic word {name!r}") from exc


def t_family(d: int) -> bytes:
    """Concatenation of d blocks a^{d-1} $_i with distinct separators $_1..$_d.

    The word has length d^2 and exactly 2d - 1 minimal substrings:
    a, aa, ..., a^{d-1} and the d separators.
    """
    if not 2 <= d <= 254:
        raise ValueError("d must be in [2, 254]")
    seps = [s for s in range(256) if s != ord("a")][:d]
    return b"".join(b"a" * (d - 1) + bytes([s]) for s in seps)


def sensitivity_family(k: int) -> tuple[bytes, bytes]:
    """(T_k, T'_k) with T_k = abbbaaa b^k and T'_k = T_k with 'c' inserted
    after position 8 (so the 'c' lands at position 9)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    t = b"abbbaaa" + b"b" * k
    t_prime = t[:8] + b"c" + t[8:]
    return t, t_prime
