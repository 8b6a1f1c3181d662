"""Text ingestion and string-indexing substrate.

All public APIs are 1-based in text positions.  A substring is addressed by a
:class:`SubstringRef` (start, length).  Derived indexes (minimal substrings,
previous-factor table, match sets, the LZ factor count) are computed lazily and
cached; a :class:`Text` is immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from minrep.sarray import lcp_array, shortest_per_occurrence_class, suffix_array
from minrep.sautomaton import SuffixAutomaton

_HASH_MODS = ((1_000_000_007, 131), (998_244_353, 137))


@dataclass(frozen=True, order=True)
class SubstringRef:
    start: int  # 1-based
    length: int

    def __post_init__(self):
        if self.start < 1 or self.length < 1:
            raise ValueError(f"bad substring ref ({self.start},{self.length})")

    @property
    def end(self) -> int:
        """Inclusive 1-based end position."""
        return self.start + self.length - 1


@dataclass(frozen=True)
class MinimalSubstringSet:
    """Distinct substrings at their leftmost occurrences, sorted by (start, length).

    Held as parallel 0-based arrays; `entries` materializes 1-based refs on
    demand (avoid it for million-entry sets — count/total_length suffice)."""

    starts: np.ndarray = field(repr=False)  # 0-based
    lengths: np.ndarray = field(repr=False)
    count: int
    total_length: int

    @classmethod
    def from_arrays(cls, starts: np.ndarray, lengths: np.ndarray) -> "MinimalSubstringSet":
        order = np.lexsort((lengths, starts))
        starts, lengths = starts[order], lengths[order]
        return cls(starts=starts, lengths=lengths,
                   count=len(starts), total_length=int(lengths.sum()))

    @cached_property
    def entries(self) -> tuple[SubstringRef, ...]:
        return tuple(SubstringRef(int(s) + 1, int(l))
                     for s, l in zip(self.starts.tolist(), self.lengths.tolist()))


class Text:
    def __init__(self, data: bytes):
        if len(data) == 0:
            raise ValueError("empty text")
        self.data = bytes(data)
        self.n = len(data)
        self.alphabet = sorted(set(data))
        self.sigma = len(self.alphabet)

    @classmethod
    def from_str(cls, s: str) -> "Text":
        return cls(s.encode("latin-1"))

    @classmethod
    def from_file(cls, path) -> "Text":
        with open(path, "rb") as fh:
            return cls(fh.read())

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        head = self.data[:16].decode("latin-1")
        dots = "..." if self.n > 16 else ""
        return f"Text({head!r}{dots}, n={self.n})"

    def check_ref(self, s: SubstringRef) -> None:
        if s.end > self.n:
            raise ValueError(f"substring ref {s} out of range for n={self.n}")

    def slice(self, s: SubstringRef) -> bytes:
        self.check_ref(s)
        return self.data[s.start - 1 : s.end]

    # -- occurrences / covers ------------------------------------------------

    def occurrences(self, s: SubstringRef) -> list[int]:
        """Sorted 1-based start positions of all (possibly overlapping) occurrences."""
        pat = self.slice(s)
        out = []
        k = self.data.find(pat)
        while k != -1:
            out.append(k + 1)
            k = self.data.find(pat, k + 1)
        return out

    def cover(self, s: SubstringRef) -> list[int]:
        """Sorted set of positions covered by some occurrence of the substring."""
        covered: set[int] = set()
        ln = s.length
        for i in self.occurrences(s):
            covered.update(range(i, i + ln))
        return sorted(covered)

    # -- minimal substrings --------------------------------------------------

    @cached_property
    def _automaton(self) -> SuffixAutomaton:
        return SuffixAutomaton(self.data)

    @cached_property
    def _automaton_rev(self) -> SuffixAutomaton:
        return SuffixAutomaton(self.data[::-1])

    @cached_property
    def _hash_prefix(self):
        tables = []
        for mod, base in _HASH_MODS:
            pre = [0] * (self.n + 1)
            pw = [1] * (self.n + 1)
            h = 0
            p = 1
            for i, c in enumerate(self.data):
                h = (h * base + c + 1) % mod
                p = p * base % mod
                pre[i + 1] = h
                pw[i + 1] = p
            tables.append((mod, np.asarray(pre, dtype=np.int64),
                           np.asarray(pw, dtype=np.int64)))
        return tables

    def _substring_key(self, start0: int, length: int) -> tuple:
        key = [length]
        for mod, pre, pw in self._hash_prefix:
            key.append(int(pre[start0 + length] - pre[start0] * pw[length]) % mod)
        return tuple(key)

    def _keys64(self, starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        """Fold both rolling hashes plus the length into one int64 per substring."""
        (m1, pre1, pw1), (m2, pre2, pw2) = self._hash_prefix
        h1 = (pre1[starts + lengths] - pre1[starts] * pw1[lengths]) % m1
        h1 = (h1 + lengths * 2654435761) % m1
        h2 = (pre2[starts + lengths] - pre2[starts] * pw2[lengths]) % m2
        return h1 * m2 + h2

    @cached_property
    def _char_entries(self) -> tuple[np.ndarray, np.ndarray]:
        """(starts0, lengths) of each distinct character at its first occurrence."""
        arr = np.frombuffer(self.data, dtype=np.uint8)
        _, idx = np.unique(arr, return_index=True)
        starts = np.sort(idx.astype(np.int64))
        return starts, np.ones(len(starts), dtype=np.int64)

    @cached_property
    def _right_minimal_long(self) -> tuple[np.ndarray, np.ndarray]:
        """(starts0, lengths), length >= 2, substrings whose one-shorter prefix
        occurs strictly more often; leftmost occurrences."""
        sa = suffix_array(self.data)
        starts, lens = shortest_per_occurrence_class(
            self.data, sa, lcp_array(self.data, sa))
        keep = lens >= 2
        return starts[keep], lens[keep]

    @cached_property
    def _left_minimal_long_keys(self) -> np.ndarray:
        """Hash keys (forward coordinates) of substrings, length >= 2, whose
        one-shorter suffix occurs strictly more often."""
        rdata = self.data[::-1]
        sa = suffix_array(rdata)
        starts, lens = shortest_per_occurrence_class(rdata, sa, lcp_array(rdata, sa))
        keep = lens >= 2
        starts, lens = starts[keep], lens[keep]
        return self._keys64(self.n - starts - lens, lens)

    @cached_property
    def minimal_substrings(self) -> MinimalSubstringSet:
        """All distinct substrings strictly rarer than every proper substring.

        Length-1 substrings always qualify: their only proper substring is the
        empty string, which occurs n+1 times.
        """
        r_starts, r_lens = self._right_minimal_long
        keep = np.isin(self._keys64(r_starts, r_lens), self._left_minimal_long_keys)
        c_starts, c_lens = self._char_entries
        return MinimalSubstringSet.from_arrays(
            np.concatenate([c_starts, r_starts[keep]]),
            np.concatenate([c_lens, r_lens[keep]]))

    @cached_property
    def right_minimal_substrings(self) -> MinimalSubstringSet:
        """All distinct substrings whose one-shorter prefix occurs strictly more often."""
        r_starts, r_lens = self._right_minimal_long
        c_starts, c_lens = self._char_entries
        return MinimalSubstringSet.from_arrays(
            np.concatenate([c_starts, r_starts]),
            np.concatenate([c_lens, r_lens]))

    # -- previous-factor table ----------------------------------------------

    @cached_property
    def lpnf(self) -> list[int]:
        """lpnf[i] (1-based; index 0 unused): the largest l such that T[i..i+l)
        occurs entirely inside T[1..i).  T[i..i+l) occurs in the prefix iff
        l <= lpnf[i]."""
        data = self.data
        n = self.n
        table = [0] * (n + 1)
        for i in range(1, n + 1):
            lo, hi = 0, min(i - 1, n - i + 1)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if data.find(data[i - 1 : i - 1 + mid], 0, i - 1) != -1:
                    lo = mid
                else:
                    hi = mid - 1
            table[i] = lo
        return table

    def occurs_in_prefix(self, s: SubstringRef) -> bool:
        """Whether the substring has an occurrence fully inside T[1..start)."""
        self.check_ref(s)
        return s.length <= self.lpnf[s.start]

    # -- match sets ----------------------------------------------------------

    @cached_property
    def match_sets(self) -> list[tuple[int, ...]]:
        """match_sets[i]: positions j != i with T[j] = T[i] (index 0 unused)."""
        by_char: dict[int, list[int]] = {}
        for i, c in enumerate(self.data, start=1):
            by_char.setdefault(c, []).append(i)
        sets: list[tuple[int, ...]] = [()] * (self.n + 1)
        for positions in by_char.values():
            for i in positions:
                sets[i] = tuple(j for j in positions if j != i)
        return sets

    # -- longest common extensions / LZ -------------------------------------

    def lce(self, i: int, j: int) -> int:
        """Length of the longest common prefix of the suffixes at 1-based i, j."""
        data = self.data
        n = self.n
        k = 0
        while i + k <= n and j + k <= n and data[i + k - 1] == data[j + k - 1]:
            k += 1
        return k

    @cached_property
    def lz_factor_count(self) -> int:
        """Number of factors of the greedy left-to-right self-referencing LZ parse."""
        data = self.data
        n = self.n
        count = 0
        i = 0  # 0-based
        while i < n:
            lo, hi = 0, n - i
            while lo < hi:
                mid = (lo + hi + 1) // 2
                # earlier occurrence may overlap the factor itself
                k = data.find(data[i : i + mid], 0, i + mid - 1)
                if k != -1 and k < i:
                    lo = mid
                else:
                    hi = mid - 1
            i += max(lo, 1)
            count += 1
        return count


def build_text(data: bytes) -> Text:
    return Text(data)


# -- independent quadratic-scan oracle (test cross-check) --------------------

def distinct_substring_occurrences(data: bytes) -> dict[bytes, int]:
    n = len(data)
    occ: dict[bytes, int] = {}
    for i in range(n):
        for j in range(i + 1, n + 1):
            sub = data[i:j]
            occ[sub] = occ.get(sub, 0) + 1
    return occ


def minimal_substrings_bruteforce(data: bytes) -> set[bytes]:
    """Quadratic-scan enumeration of minimal substrings; oracle use only."""
    occ = distinct_substring_occurrences(data)
    out = set()
    for sub, c in occ.items():
        if len(sub) == 1:
            out.add(sub)  # the empty string occurs n+1 > c times
        elif occ[sub[:-1]] > c and occ[sub[1:]] > c:
            out.add(sub)
    return out


def right_minimal_substrings_bruteforce(data: bytes) -> set[bytes]:
    occ = distinct_substring_occurrences(data)
    return {sub for sub, c in occ.items() if len(sub) == 1 or occ[sub[:-1]] > c}
