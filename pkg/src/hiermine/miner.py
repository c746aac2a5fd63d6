"""Level-wise Apriori over the flat trie.

The first pass counts singletons directly.  Infrequent items are then
removed from every transaction and the survivors renumbered densely in
ascending order, so trie labels stay small and order-preserving.  Each
further pass joins frequent siblings, prunes by downward closure, counts
by trie descent and drops candidates below the absolute threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Iterator, NamedTuple, Sequence, TextIO

import numpy as np

from .codec import LEVELS
from .errors import ConfigError, EmptyInputError, TokenFormatError
from .trie import Trie, count_supports, generate_candidates


def absolute_threshold(min_support: float, n_transactions: int) -> int:
    """``ceil(min_support * n)``, at least 1.

    The product is taken in decimal so that e.g. ``0.07 * 100`` is 7, not
    the binary-float 7.000000000000001 that would round up to 8.
    """
    exact = Decimal(str(min_support)) * n_transactions
    return max(1, math.ceil(exact))


@dataclass(frozen=True)
class MiningConfig:
    min_support: float
    level: int = LEVELS
    max_itemset_size: int | None = None
    levels: int = LEVELS

    def __post_init__(self):
        if not (isinstance(self.min_support, (int, float)) and 0 < self.min_support <= 1):
            raise ConfigError(f"min_support must be in (0, 1], got {self.min_support!r}")
        if not (isinstance(self.level, int) and 1 <= self.level <= self.levels):
            raise ConfigError(f"level must be in 1..{self.levels}, got {self.level!r}")
        if self.max_itemset_size is not None and self.max_itemset_size < 1:
            raise ConfigError("max_itemset_size must be >= 1")

    def threshold(self, n_transactions: int) -> int:
        return absolute_threshold(self.min_support, n_transactions)


class FrequentItemsets:
    """Frequent itemsets (sorted tuples) with absolute support counts."""

    def __init__(self, counts: dict[tuple[int, ...], int], n_transactions: int,
                 width: int | None = None, level: int | None = None,
                 min_support: float | None = None):
        self.counts = counts
        self.n_transactions = n_transactions
        self.width = width
        self.level = level
        self.min_support = min_support

    def __len__(self):
        return len(self.counts)

    def __contains__(self, itemset):
        return tuple(sorted(itemset)) in self.counts

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self.counts, key=lambda s: (len(s), s)))

    def __eq__(self, other):
        if not isinstance(other, FrequentItemsets):
            return NotImplemented
        return self.counts == other.counts and self.n_transactions == other.n_transactions

    def __repr__(self):
        return f"FrequentItemsets({len(self)} itemsets, n_transactions={self.n_transactions})"

    def count(self, itemset: Iterable[int]) -> int:
        return self.counts[tuple(sorted(itemset))]

    def support(self, itemset: Iterable[int]) -> float:
        return self.count(itemset) / self.n_transactions

    def items(self):
        return [(s, self.counts[s]) for s in self]

    def of_size(self, k: int) -> dict[tuple[int, ...], int]:
        return {s: c for s, c in self.counts.items() if len(s) == k}

    @property
    def max_size(self) -> int:
        return max(map(len, self.counts), default=0)

    def format_item(self, item: int) -> str:
        return str(item).zfill(self.width) if self.width else str(item)

    def write(self, sink: TextIO) -> None:
        """``items<TAB>count`` lines after ``#`` metadata lines."""
        meta = {"n_transactions": self.n_transactions, "width": self.width,
                "level": self.level, "minsup": self.min_support}
        sink.write("# hiermine itemsets\n")
        sink.write("# " + " ".join(f"{k}={v}" for k, v in meta.items() if v is not None) + "\n")
        fmt = self.format_item
        for s in self:
            sink.write(" ".join(fmt(x) for x in s) + "\t" + str(self.counts[s]) + "\n")

    @classmethod
    def read(cls, source: TextIO) -> "FrequentItemsets":
        meta: dict[str, str] = {}
        counts = {}
        for line_no, line in enumerate(source, 1):
            if line.startswith("#"):
                for field in line[1:].split():
                    if "=" in field:
                        k, v = field.split("=", 1)
                        meta[k] = v
                continue
            if not line.strip():
                continue
            try:
                items, count = line.rstrip("\n").split("\t")
                counts[tuple(sorted(int(x) for x in items.split()))] = int(count)
            except ValueError:
                raise TokenFormatError("malformed itemset line", row=line_no) from None
        if "n_transactions" not in meta:
            raise TokenFormatError("itemsets file lacks the n_transactions header")
        return cls(counts, int(meta["n_transactions"]),
                   width=int(meta["width"]) if "width" in meta else None,
                   level=int(meta["level"]) if "level" in meta else None,
                   min_support=float(meta["minsup"]) if "minsup" in meta else None)


class _Flat(NamedTuple):
    items: np.ndarray
    offsets: np.ndarray


def _reduce(data, frequent: np.ndarray) -> _Flat:
    """Keep only frequent items, renumbered 0..m-1 in ascending order."""
    lengths = np.diff(data.offsets)
    rows = np.repeat(np.arange(len(lengths)), lengths)
    keep = np.isin(data.items, frequent, assume_unique=False)
    dense = np.searchsorted(frequent, data.items[keep])
    new_len = np.bincount(rows[keep], minlength=len(lengths))
    offsets = np.concatenate([[0], np.cumsum(new_len)])
    return _Flat(dense.astype(np.int64), offsets.astype(np.int64))


def build_trie(data, config: MiningConfig, threads: int = 1, kernel=None):
    """Run the Apriori passes; returns ``(trie, labels)`` where trie labels
    index into the ascending `labels` array of frequent items."""
    n = data.n_transactions
    if n == 0:
        raise EmptyInputError("cannot mine an empty dataset: support threshold undefined")
    thr = config.threshold(n)
    uniq, cnt = np.unique(data.items, return_counts=True)
    mask = cnt >= thr
    labels = uniq[mask]
    trie = Trie()
    trie.append_level(np.zeros(len(labels), dtype=np.int64), np.arange(len(labels)))
    trie.count[1:] = cnt[mask]
    if len(labels) < 2 or config.max_itemset_size == 1:
        trie.drop_empty_level()
        return trie, labels
    reduced = _reduce(data, labels)
    k = 1
    while config.max_itemset_size is None or k < config.max_itemset_size:
        generate_candidates(trie, kernel=kernel)
        if trie.level_size(trie.depth) == 0:
            trie.drop_empty_level()
            break
        count_supports(reduced, trie, threads=threads, kernel=kernel)
        if trie.prune_level(thr) == 0:
            trie.drop_empty_level()
            break
        k += 1
    return trie, labels


def mine_frequent(data, config: MiningConfig, threads: int = 1, kernel=None) -> FrequentItemsets:
    """All itemsets whose containment count reaches the threshold."""
    trie, labels = build_trie(data, config, threads=threads, kernel=kernel)
    counts: dict[tuple[int, ...], int] = {}
    for d in range(1, trie.depth + 1):
        lo, hi = trie.level_range(d)
        sets = labels[trie.level_itemsets(d)].tolist()
        counts.update(zip(map(tuple, sets), trie.count[lo:hi].tolist()))
    return FrequentItemsets(counts, data.n_transactions, width=getattr(data, "width", None),
                            min_support=config.min_support)

