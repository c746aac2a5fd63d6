"""Synthetic coded market-basket data over a three-level hierarchy.

Transactions are assembled from a pool of recurring patterns in the spirit
of the IBM Quest generator, but patterns are hierarchical: a pattern picks
a category, one or two brands in it and one or two packs of each brand
(sometimes a second category as well).  A pattern is therefore a single
item at level 1, a few at level 2 and several at level 3, so frequent
structure grows with depth the way real product hierarchies do.  A
"staple" pattern occurs in most baskets; sparse uniform noise is added on
top.
"""

from __future__ import annotations

import numpy as np

from .io import Dataset


def hierarchy_codes(n_categories=90, n_brands=4, n_packs=3, digits_per_level=2) -> np.ndarray:
    """Leaf codes ``cc bb pp`` as a ``(categories, brands, packs)`` array.

    Categories start at 10, brands at 20, packs at 00.
    """
    base = 10 ** digits_per_level
    if 10 + n_categories > base or 20 + n_brands > base or n_packs > base:
        raise ValueError("hierarchy does not fit the code width")
    cats = 10 + np.arange(n_categories)
    brands = 20 + np.arange(n_brands)
    packs = np.arange(n_packs)
    return (cats[:, None, None] * base * base + brands[None, :, None] * base
            + packs[None, None, :])


def _pattern(rng, leaves, n_categories=1):
    n_cat, n_brand, n_pack = leaves.shape
    items = []
    for c in rng.choice(n_cat, size=n_categories, replace=False):
        for b in rng.choice(n_brand, size=rng.integers(1, min(2, n_brand) + 1), replace=False):
            k = rng.integers(1, min(2, n_pack) + 1)
            items.extend(leaves[c, b, rng.choice(n_pack, size=k, replace=False)].tolist())
    return items


def generate(n_transactions: int = 100_000, n_categories: int = 90, n_brands: int = 4,
             n_packs: int = 3, n_patterns: int = 80, patterns_per_tx: float = 1.5,
             noise_per_tx: float = 1.0, staple_rate: float = 0.6, drop_rate: float = 0.1,
             seed: int = 0) -> Dataset:
    """Generate a coded, fixed-width (6-digit) :class:`Dataset`."""
    rng = np.random.default_rng(seed)
    leaves = hierarchy_codes(n_categories, n_brands, n_packs)
    patterns = [_pattern(rng, leaves, 2 if rng.random() < 0.3 else 1)
                for _ in range(n_patterns)]
    # staple: two brands of one category, two packs of the first
    c = rng.integers(n_categories)
    staple = leaves[c, 0, :2].tolist() + leaves[c, 1, :1].tolist()
    weights = 1.0 / np.arange(1, n_patterns + 1) ** 0.8
    weights /= weights.sum()
    flat_leaves = leaves.ravel()
    n_pat = rng.poisson(patterns_per_tx, size=n_transactions)
    n_noise = rng.poisson(noise_per_tx, size=n_transactions)
    has_staple = rng.random(n_transactions) < staple_rate
    rows = []
    for i in range(n_transactions):
        chosen = [patterns[p] for p in rng.choice(n_patterns, size=n_pat[i], p=weights)]
        if has_staple[i]:
            chosen.append(staple)
        tx = []
        for pat in chosen:
            tx.extend(x for x, drop in zip(pat, rng.random(len(pat)) < drop_rate) if not drop)
        tx.extend(flat_leaves[rng.integers(0, len(flat_leaves), size=n_noise[i])].tolist())
        rows.append(tx)
    return Dataset.from_transactions(rows, width=6)
