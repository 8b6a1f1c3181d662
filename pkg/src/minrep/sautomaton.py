"""Suffix automaton over byte strings, with per-state occurrence statistics.

Each state of the automaton is an equivalence class of substrings sharing the
same set of ending positions.  The shortest string of a class is exactly a
substring whose one-character-shorter suffix occurs strictly more often, which
is what the substring enumeration in :mod:`minrep.text` builds on.
"""

from __future__ import annotations


class SuffixAutomaton:
    def __init__(self, data: bytes):
        self.data = data
        n = len(data)
        # state arrays; state 0 is the initial state
        self.link: list[int] = [-1]
        self.length: list[int] = [0]
        self.trans: list[dict[int, int]] = [{}]
        self._is_clone: list[bool] = [False]
        self._end: list[int] = [0]  # 1-based end position at creation (0 for clones/initial)

        last = 0
        for pos, c in enumerate(data, start=1):
            cur = self._new_state(self.length[last] + 1, end=pos)
            p = last
            while p != -1 and c not in self.trans[p]:
                self.trans[p][c] = cur
                p = self.link[p]
            if p == -1:
                self.link[cur] = 0
            else:
                q = self.trans[p][c]
                if self.length[p] + 1 == self.length[q]:
                    self.link[cur] = q
                else:
                    clone = self._new_state(self.length[p] + 1, end=0, clone=True)
                    self.trans[clone] = dict(self.trans[q])
                    self.link[clone] = self.link[q]
                    while p != -1 and self.trans[p].get(c) == q:
                        self.trans[p][c] = clone
                        p = self.link[p]
                    self.link[q] = clone
                    self.link[cur] = clone
            last = cur
        self.n_states = len(self.length)
        self._count: list[int] | None = None
        self._minend: list[int] | None = None
        self._maxend: list[int] | None = None

    def _new_state(self, length: int, end: int, clone: bool = False) -> int:
        self.link.append(-1)
        self.length.append(length)
        self.trans.append({})
        self._is_clone.append(clone)
        self._end.append(end)
        return len(self.length) - 1

    def _order_by_length(self) -> list[int]:
        # counting sort; suffix links always point to shorter states
        n = len(self.data)
        buckets = [0] * (n + 1)
        for v in range(1, self.n_states):
            buckets[self.length[v]] += 1
        start = [0] * (n + 2)
        for ln in range(1, n + 1):
            start[ln + 1] = start[ln] + buckets[ln]
        order = [0] * (self.n_states - 1)
        fill = start[:]
        for v in range(1, self.n_states):
            ln = self.length[v]
            order[fill[ln]] = v
            fill[ln] += 1
        return order

    def _compute_stats(self) -> None:
        if self._count is not None:
            return
        big = len(self.data) + 1
        count = [0] * self.n_states
        minend = [big] * self.n_states
        maxend = [0] * self.n_states
        for v in range(1, self.n_states):
            if not self._is_clone[v]:
                count[v] = 1
                minend[v] = maxend[v] = self._end[v]
        link = self.link
        for v in reversed(self._order_by_length()):
            p = link[v]
            count[p] += count[v]
            if minend[v] < minend[p]:
                minend[p] = minend[v]
            if maxend[v] > maxend[p]:
                maxend[p] = maxend[v]
        self._count = count
        self._minend = minend
        self._maxend = maxend

    def class_heads(self) -> list[tuple[int, int, int]]:
        """The shortest substring of every state, as (start, length, occ_count).

        ``start`` is the 0-based start of the leftmost occurrence.  These are
        exactly the substrings whose occurrence count strictly drops when the
        first character is removed.
        """
        self._compute_stats()
        assert self._count is not None and self._minend is not None
        out = []
        for v in range(1, self.n_states):
            ln = self.length[self.link[v]] + 1
            out.append((self._minend[v] - ln, ln, self._count[v]))
        return out

    def class_heads_rightmost(self) -> list[tuple[int, int, int]]:
        """Like :meth:`class_heads` but with the rightmost occurrence start."""
        self._compute_stats()
        assert self._count is not None and self._maxend is not None
        out = []
        for v in range(1, self.n_states):
            ln = self.length[self.link[v]] + 1
            out.append((self._maxend[v] - ln, ln, self._count[v]))
        return out

    def count_occurrences(self, pattern: bytes) -> int:
        self._compute_stats()
        assert self._count is not None
        v = 0
        for c in pattern:
            nxt = self.trans[v].get(c)
            if nxt is None:
                return 0
            v = nxt
        return self._count[v]
