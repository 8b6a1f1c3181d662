"""Suffix-array machinery for bulk substring statistics.

Provides a prefix-doubling suffix array (numpy), Kasai's LCP array, and an
lcp-interval sweep enumerating, for every distinct set of occurrences, the
shortest substring attaining it — exactly the substrings whose one-shorter
prefix occurs strictly more often (plus the length-1 substrings handled
separately by the caller's convention).
"""

from __future__ import annotations

import numpy as np


def suffix_array(data: bytes) -> np.ndarray:
    """Prefix-doubling suffix array; O(n log n) with vectorized sort rounds."""
    n = len(data)
    rank = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    k = 1
    while True:
        key2 = np.full(n, -1, dtype=np.int64)
        if k < n:
            key2[: n - k] = rank[k:]
        order = np.lexsort((key2, rank))
        r_o = rank[order]
        k_o = key2[order]
        change = np.empty(n, dtype=np.int64)
        change[0] = 0
        change[1:] = (r_o[1:] != r_o[:-1]) | (k_o[1:] != k_o[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(change)
        rank = new_rank
        if rank[order[-1]] == n - 1:
            return order
        k *= 2


def lcp_array(data: bytes, sa: np.ndarray) -> list[int]:
    """Kasai's algorithm; lcp[i] = lcp(suffix sa[i-1], suffix sa[i]), lcp[0] = 0."""
    n = len(data)
    sa_l = sa.tolist()
    rank = [0] * n
    for i, s in enumerate(sa_l):
        rank[s] = i
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r > 0:
            j = sa_l[r - 1]
            while i + h < n and j + h < n and data[i + h] == data[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def shortest_per_occurrence_class(data: bytes, sa: np.ndarray, lcp: list[int]
                                  ) -> tuple[np.ndarray, np.ndarray]:
    """(starts, lengths), 0-based: for every distinct occurrence set, the
    shortest substring with that set, at its leftmost occurrence.

    Internal lcp-intervals are enumerated with a stack sweep; suffixes that
    extend beyond all neighboring lcp values contribute their own class.
    The empty string's class (the whole array) is excluded, as are the
    length-1 classes of characters occurring everywhere — callers add
    length-1 substrings by convention.
    """
    n = len(data)
    sa_l = sa.tolist()
    starts: list[int] = []
    lens: list[int] = []

    # internal nodes: [lcp_value, min_sa]
    stack = [[0, sa_l[0]]]
    for i in range(1, n + 1):
        l = lcp[i] if i < n else 0
        carry = -1
        top = stack[-1]
        while top[0] > l:
            lv, mnv = stack.pop()
            top = stack[-1]
            pd = l if l > top[0] else top[0]
            starts.append(mnv)
            lens.append(pd + 1)
            carry = mnv if carry < 0 or mnv < carry else carry
            if mnv < top[1]:
                top[1] = mnv
        if top[0] < l:
            base = carry if carry >= 0 else sa_l[i - 1]
            stack.append([l, base])
            top = stack[-1]
        if i < n and sa_l[i] < top[1]:
            top[1] = sa_l[i]

    # singleton classes: suffix sa[j] longer than both neighboring lcps
    lcp_np = np.asarray(lcp + [0], dtype=np.int64)
    pd = np.maximum(lcp_np[:n], lcp_np[1 : n + 1])
    sa_np = np.asarray(sa, dtype=np.int64)
    mask = (n - sa_np) > pd
    node_starts = np.asarray(starts, dtype=np.int64)
    node_lens = np.asarray(lens, dtype=np.int64)
    return (np.concatenate([node_starts, sa_np[mask]]),
            np.concatenate([node_lens, pd[mask] + 1]))
