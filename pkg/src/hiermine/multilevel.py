"""Mining at a chosen concept-hierarchy level.

A coded dataset is projected to level ``L`` by keeping the leftmost
``L * digits_per_level`` digits of every item; items that collapse onto the
same level code inside one transaction are merged.  The projected dataset
is then mined like any other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codec import DIGITS_PER_LEVEL, LEVELS
from .errors import ConfigError, UncleanedInputError
from .io import Dataset
from .miner import FrequentItemsets, MiningConfig, mine_frequent


@dataclass(frozen=True)
class LevelProjection:
    level: int
    source_width: int
    digits_per_level: int = DIGITS_PER_LEVEL

    def __post_init__(self):
        if self.level < 1:
            raise ConfigError(f"level must be >= 1, got {self.level}")
        if self.digits_kept > self.source_width:
            raise ConfigError(
                f"level {self.level} needs {self.digits_kept} digits but codes are "
                f"{self.source_width} wide")

    @property
    def digits_kept(self) -> int:
        return self.level * self.digits_per_level

    @property
    def divisor(self) -> int:
        return 10 ** (self.source_width - self.digits_kept)


def project_to_level(data: Dataset, level: int, digits_per_level: int = DIGITS_PER_LEVEL,
                     levels: int = LEVELS) -> Dataset:
    """Truncate every item to `level` and merge duplicates per transaction."""
    if data.width is None:
        raise UncleanedInputError(
            "dataset has no fixed code width; normalise it with `hiermine clean` first")
    if not 1 <= level <= levels:
        raise ConfigError(f"level must be in 1..{levels}, got {level}")
    proj = LevelProjection(level, data.width, digits_per_level)
    truncated = data.items // proj.divisor
    # truncation is monotone, so each row stays sorted and duplicates are
    # adjacent; `first` marks the first copy of each run within a row
    first = np.ones(len(truncated), dtype=np.int64)
    if len(truncated) > 1:
        first[1:] = truncated[1:] != truncated[:-1]
        first[data.offsets[1:-1][data.offsets[1:-1] < len(truncated)]] = 1
    csum = np.concatenate([[0], np.cumsum(first)])
    # branch-free compaction: a duplicate lands on the slot of its first copy
    out = np.empty(int(csum[-1]), dtype=truncated.dtype)
    out[csum[1:] - 1] = truncated
    return Dataset(out, csum[data.offsets], width=proj.digits_kept)


def mine_level(data: Dataset, config: MiningConfig, threads: int = 1, kernel=None,
               digits_per_level: int = DIGITS_PER_LEVEL) -> FrequentItemsets:
    """Frequent itemsets of `data` projected to ``config.level``.

    A raw dataset without a fixed width can still be mined at the deepest
    level, where projection would be the identity.
    """
    if data.width is None and config.level == config.levels:
        projected = data
    else:
        projected = project_to_level(data, config.level, digits_per_level, config.levels)
    freq = mine_frequent(projected, config, threads=threads, kernel=kernel)
    freq.level = config.level
    return freq
