"""FIMI ``.dat`` transaction files and the in-memory :class:`Dataset`."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

import numpy as np

from .errors import TokenFormatError

ITEM_DTYPE = np.int64


class Dataset:
    """Ordered transactions stored as one flat item array plus row offsets.

    Transaction ``i`` (0-based; transaction id ``i + 1``) is
    ``items[offsets[i]:offsets[i + 1]]``, strictly increasing.  `width` is
    the fixed digit count of coded datasets, ``None`` for raw FIMI data.
    """

    __slots__ = ("items", "offsets", "width")

    def __init__(self, items: np.ndarray, offsets: np.ndarray, width: int | None = None):
        self.items = np.ascontiguousarray(items, dtype=ITEM_DTYPE)
        self.offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        self.width = width
        self.items.flags.writeable = False
        self.offsets.flags.writeable = False

    @classmethod
    def from_transactions(cls, rows: Iterable[Iterable[int]], width: int | None = None) -> "Dataset":
        flat: list[int] = []
        offsets = [0]
        for row in rows:
            flat.extend(sorted(set(int(x) for x in row)))
            offsets.append(len(flat))
        return cls(np.array(flat, dtype=ITEM_DTYPE), np.array(offsets, dtype=np.int64), width)

    @property
    def n_transactions(self) -> int:
        return len(self.offsets) - 1

    def __len__(self) -> int:
        return self.n_transactions

    def __getitem__(self, i: int) -> tuple[int, ...]:
        if i < 0:
            i += self.n_transactions
        return tuple(self.items[self.offsets[i]:self.offsets[i + 1]].tolist())

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        items = self.items.tolist()
        off = self.offsets.tolist()
        for a, b in zip(off, off[1:]):
            yield tuple(items[a:b])

    @property
    def transactions(self) -> list[tuple[int, ...]]:
        return list(self)

    @property
    def lengths(self) -> np.ndarray:
        return np.diff(self.offsets)

    def distinct_items(self) -> np.ndarray:
        return np.unique(self.items)

    def format_item(self, item: int) -> str:
        return str(item).zfill(self.width) if self.width else str(item)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return (self.width == other.width
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.items, other.items))

    def __repr__(self) -> str:
        return (f"Dataset(n_transactions={self.n_transactions}, "
                f"n_items={len(self.items)}, width={self.width})")


def read_dat(source: TextIO | Iterable[str], width: int | str | None = None) -> Dataset:
    """Parse a FIMI text stream.

    With an integer `width` every token must have exactly that many digits.
    ``width="auto"`` adopts the common token length if all tokens share one.
    Blank lines are skipped.
    """
    lengths: set[int] = set()
    rows = []
    for line_no, line in enumerate(source, 1):
        tokens = line.split()
        if not tokens:
            continue
        for col, tok in enumerate(tokens, 1):
            if not (tok.isascii() and tok.isdigit()):
                raise TokenFormatError(f"non-numeric token {tok!r}", row=line_no, column=col)
            if isinstance(width, int) and len(tok) != width:
                raise TokenFormatError(
                    f"token {tok!r} is not {width} digits wide; run `hiermine clean` first",
                    row=line_no, column=col)
            lengths.add(len(tok))
        rows.append(map(int, tokens))
    if width == "auto":
        width = lengths.pop() if len(lengths) == 1 else None
    return Dataset.from_transactions(rows, width=width)


def read_dat_file(path, width: int | str | None = None) -> Dataset:
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            return read_dat(fh, width=width)
    except TokenFormatError as exc:
        raise TokenFormatError(exc.args[0], path=path) from None


def write_dat(data: Dataset, sink: TextIO) -> None:
    """Canonical form: items ascending, single spaces, trailing newline."""
    fmt = data.format_item
    for row in data:
        sink.write(" ".join(fmt(x) for x in row))
        sink.write("\n")


def write_dat_file(data: Dataset, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        write_dat(data, fh)
