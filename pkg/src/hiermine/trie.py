"""Flat breadth-first candidate trie.

Node 0 is the root.  Nodes of depth ``d`` occupy the contiguous index range
``depth_start[d]:depth_start[d + 1]``, grouped by parent, and node ``v``'s
children are ``ptr[v]:ptr[v + 1]`` with strictly increasing labels, so the
path from the root to any node spells a sorted itemset.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np

from . import kernels


class Trie:
    def __init__(self):
        self.item = np.array([-1], dtype=np.int64)
        self.parent = np.array([-1], dtype=np.int64)
        self.ptr = np.array([1, 1], dtype=np.int64)
        self.count = np.zeros(1, dtype=np.int64)
        self.depth_start = [0, 1]

    @property
    def depth(self) -> int:
        """Number of item levels stored; the last may be empty after pruning."""
        return len(self.depth_start) - 2

    @property
    def n_nodes(self) -> int:
        return len(self.item)

    def level_range(self, d: int) -> tuple[int, int]:
        return self.depth_start[d], self.depth_start[d + 1]

    def level_size(self, d: int) -> int:
        lo, hi = self.level_range(d)
        return hi - lo

    @classmethod
    def from_itemsets(cls, itemsets: Iterable[Sequence[int]]) -> "Trie":
        """Trie containing every given itemset and all of its prefixes.

        All itemsets must have the same length; counters start at zero.
        """
        sets = sorted({tuple(sorted(set(s))) for s in itemsets})
        trie = cls()
        if not sets:
            return trie
        k = len(sets[0])
        if any(len(s) != k for s in sets):
            raise ValueError("all candidate itemsets must have the same size")
        node_of = {(): 0}
        for d in range(1, k + 1):
            prefixes = sorted({s[:d] for s in sets})
            parents = np.array([node_of[p[:-1]] for p in prefixes], dtype=np.int64)
            labels = np.array([p[-1] for p in prefixes], dtype=np.int64)
            start = trie.n_nodes
            trie.append_level(parents, labels)
            node_of.update({p: start + i for i, p in enumerate(prefixes)})
        return trie

    def append_level(self, parents: np.ndarray, labels: np.ndarray) -> None:
        """Add a new deepest level; `parents` must be sorted nodes of the
        current deepest level, labels ascending within each parent."""
        lo, hi = self.level_range(self.depth)
        n_old = self.n_nodes
        n_new = len(labels)
        self.item = np.concatenate([self.item, labels.astype(np.int64)])
        self.parent = np.concatenate([self.parent, parents.astype(np.int64)])
        self.count = np.concatenate([self.count, np.zeros(n_new, dtype=np.int64)])
        per_parent = np.bincount(parents - lo, minlength=hi - lo) if n_new else np.zeros(hi - lo, np.int64)
        ptr = np.empty(n_old + n_new + 1, dtype=np.int64)
        ptr[:lo] = self.ptr[:lo]
        ptr[lo] = hi
        ptr[lo + 1:hi + 1] = hi + np.cumsum(per_parent)
        ptr[hi + 1:] = n_old + n_new
        self.ptr = ptr
        self.depth_start.append(n_old + n_new)

    def prune_level(self, threshold: int) -> int:
        """Drop nodes of the deepest level counted below `threshold`;
        returns how many survive."""
        d = self.depth
        lo, hi = self.level_range(d)
        keep = self.count[lo:hi] >= threshold
        if keep.all():
            return hi - lo
        parents = self.parent[lo:hi][keep]
        labels = self.item[lo:hi][keep]
        counts = self.count[lo:hi][keep]
        self._truncate_last_level()
        self.append_level(parents, labels)
        self.count[lo:] = counts
        return len(labels)

    def _truncate_last_level(self):
        d = self.depth
        plo, lo = self.depth_start[d - 1], self.depth_start[d]
        self.item = self.item[:lo]
        self.parent = self.parent[:lo]
        self.count = self.count[:lo]
        self.ptr = np.concatenate([self.ptr[:plo], np.full(lo - plo + 1, lo, dtype=np.int64)])
        self.depth_start.pop()

    def drop_empty_level(self) -> None:
        """Remove a deepest level that has no nodes."""
        if len(self.depth_start) > 2 and self.depth_start[-1] == self.depth_start[-2]:
            self.depth_start.pop()

    def itemset(self, v: int) -> tuple[int, ...]:
        out = []
        while v > 0:
            out.append(int(self.item[v]))
            v = int(self.parent[v])
        return tuple(reversed(out))

    def level_itemsets(self, d: int) -> np.ndarray:
        """``(n, d)`` array of the itemsets spelled by depth-`d` nodes."""
        lo, hi = self.level_range(d)
        out = np.empty((hi - lo, d), dtype=np.int64)
        nodes = np.arange(lo, hi)
        for col in range(d - 1, -1, -1):
            out[:, col] = self.item[nodes]
            nodes = self.parent[nodes]
        return out

    def find(self, itemset: Sequence[int]) -> int:
        """Node index of `itemset`, or -1."""
        v = 0
        for x in itemset:
            a, b = self.ptr[v], self.ptr[v + 1]
            i = a + int(np.searchsorted(self.item[a:b], x))
            if i == b or self.item[i] != x:
                return -1
            v = i
        return v

    def support(self, itemset: Sequence[int]) -> int:
        v = self.find(sorted(itemset))
        if v < 0:
            raise KeyError(tuple(itemset))
        return int(self.count[v])

    def __contains__(self, itemset) -> bool:
        return self.find(sorted(itemset)) > 0

    def items(self, d: int | None = None):
        """``(itemset, count)`` pairs for one depth or for every depth."""
        depths = [d] if d is not None else range(1, len(self.depth_start) - 1)
        for dd in depths:
            lo, hi = self.level_range(dd)
            sets = self.level_itemsets(dd).tolist()
            for row, c in zip(sets, self.count[lo:hi].tolist()):
                yield tuple(row), c


def count_supports(data, trie: Trie, threads: int = 1, kernel=None) -> Trie:
    """Fill the deepest-level counters of `trie` with containment counts.

    `data` is a :class:`~hiermine.io.Dataset` (or anything with flat
    ``items``/``offsets`` arrays).  With ``threads > 1`` the transactions
    are split into contiguous chunks counted into private arrays and summed.
    """
    kern = kernels.active if kernel is None else kernel
    d = trie.depth
    lo, hi = trie.level_range(d)
    trie.count[lo:hi] = 0
    if d == 0 or hi == lo:
        return trie
    items = np.ascontiguousarray(data.items, dtype=np.int64)
    offsets = np.ascontiguousarray(data.offsets, dtype=np.int64)
    n = len(offsets) - 1
    threads = max(1, min(int(threads), n)) if n else 1
    if threads == 1:
        counts = np.zeros(trie.n_nodes, dtype=np.int64)
        kern.count_level(items, offsets, 0, n, trie.item, trie.ptr, d, counts)
    else:
        bounds = np.linspace(0, n, threads + 1).astype(int)
        parts = [np.zeros(trie.n_nodes, dtype=np.int64) for _ in range(threads)]
        with ThreadPoolExecutor(threads) as pool:
            futures = [pool.submit(kern.count_level, items, offsets, int(bounds[i]),
                                   int(bounds[i + 1]), trie.item, trie.ptr, d, parts[i])
                       for i in range(threads)]
            for f in futures:
                f.result()
        counts = np.sum(parts, axis=0)
    trie.count[lo:hi] = counts[lo:hi]
    return trie


def generate_candidates(trie: Trie, kernel=None) -> Trie:
    """Append the (k+1)-candidates joined from the frequent k-level.

    The deepest level must hold exactly the frequent k-itemsets.  Two
    siblings (same k-1 prefix) join into a candidate, kept only if every
    k-subset is present in the trie.
    """
    kern = kernels.active if kernel is None else kernel
    d = trie.depth
    lo, hi = trie.level_range(d)
    if d == 0:
        raise ValueError("trie has no frequent level to join")
    parents, labels = kern.generate_level(trie.item, trie.ptr, trie.parent, lo, hi, d)
    trie.append_level(parents, labels)
    return trie
