"""Hierarchical item codes: category, brand and pack segments.

An item code is a fixed-width decimal string made of one segment per
hierarchy level, leftmost segment = category.  With the default layout of
three levels and two digits per level, ``102101`` reads as category ``10``
(Milk), brand ``21`` (Mother Dairy) and pack ``01`` (500ml).
"""

from __future__ import annotations

import csv
import re
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CapacityError,
    SegmentConflictError,
    SegmentFormatError,
    UnknownCodeError,
    UnknownItemError,
    TokenFormatError,
)

LEVELS = 3
DIGITS_PER_LEVEL = 2
LEVEL_NAMES = ("category", "brand", "pack")


class ItemDescription(NamedTuple):
    category: str
    brand: str
    pack: str


def _key(name: str) -> str:
    return name.strip().casefold()


def truncate_to_level(code: str, level: int, digits_per_level: int = DIGITS_PER_LEVEL,
                      levels: int = LEVELS) -> str:
    """Return the leftmost ``digits_per_level * level`` digits of `code`."""
    if not 1 <= level <= levels:
        raise ValueError(f"level must be in 1..{levels}, got {level}")
    keep = digits_per_level * level
    if len(code) < keep or not code.isdigit():
        raise ValueError(f"code {code!r} is not a valid item code at level {level}")
    return code[:keep]


class CodeBook:
    """Three nested lookup tables mapping names to code segments and back.

    Scopes are keyed by the tuple of parent segments: ``()`` for categories,
    ``(cat,)`` for brands, ``(cat, brand)`` for packs.  A code book is not
    modified after construction.
    """

    def __init__(self, digits_per_level: int = DIGITS_PER_LEVEL):
        self.digits_per_level = digits_per_level
        self.levels = LEVELS
        self._forward: list[dict[tuple, str]] = [{} for _ in range(LEVELS)]
        self._inverse: list[dict[tuple, str]] = [{} for _ in range(LEVELS)]
        self._origin: list[dict[tuple, int]] = [{} for _ in range(LEVELS)]
        self._scope_size: dict[tuple, int] = {}

    @property
    def code_width(self) -> int:
        return self.levels * self.digits_per_level

    @property
    def capacity(self) -> int:
        return 10 ** self.digits_per_level

    def _add(self, level: int, scope: tuple, name: str, segment: str, row: int) -> None:
        what = LEVEL_NAMES[level]
        if len(segment) != self.digits_per_level or not (segment.isdigit() and segment.isascii()):
            raise SegmentFormatError(
                f"{what} row {row}: segment {segment!r} is not exactly "
                f"{self.digits_per_level} decimal digits")
        if not name.strip():
            raise SegmentFormatError(f"{what} row {row}: empty name")
        for parent_level, _ in enumerate(scope):
            if (scope[:parent_level], scope[parent_level]) not in self._inverse[parent_level]:
                raise UnknownCodeError(LEVEL_NAMES[parent_level], "".join(scope[:parent_level + 1]))
        inverse, forward, origin = self._inverse[level], self._forward[level], self._origin[level]
        if (scope, segment) in inverse:
            other = origin[(scope, segment)]
            raise SegmentConflictError(
                f"{what} rows {other} and {row} both use segment {segment!r}"
                f"{' under ' + ''.join(scope) if scope else ''}")
        if (scope, _key(name)) in forward:
            other = origin[(scope, forward[(scope, _key(name))])]
            raise SegmentConflictError(f"{what} rows {other} and {row} both name {name.strip()!r}")
        if self._scope_size.get(scope, 0) >= self.capacity:
            raise CapacityError(
                f"{what} row {row}: more than {self.capacity} entries in one scope")
        forward[(scope, _key(name))] = segment
        inverse[(scope, segment)] = name.strip()
        origin[(scope, segment)] = row
        self._scope_size[scope] = self._scope_size.get(scope, 0) + 1

    # read-only views, keyed by display name
    @property
    def categories(self) -> dict[str, str]:
        return {name: seg for (_, seg), name in self._inverse[0].items()}

    @property
    def brands(self) -> dict[tuple[str, str], str]:
        return {(scope[0], name): seg for (scope, seg), name in self._inverse[1].items()}

    @property
    def packs(self) -> dict[tuple[str, str, str], str]:
        return {(*scope, name): seg for (scope, seg), name in self._inverse[2].items()}

    def __len__(self) -> int:
        return len(self._inverse[2])

    def descriptions(self) -> Iterable[ItemDescription]:
        """Every fully specified item in the book."""
        for (scope, _), pack in sorted(self._inverse[2].items()):
            cat = self._inverse[0][((), scope[0])]
            brand = self._inverse[1][(scope[:1], scope[1])]
            yield ItemDescription(cat, brand, pack)

    def encode(self, item: Sequence[str]) -> str:
        scope: tuple = ()
        for level, name in enumerate(item):
            try:
                segment = self._forward[level][(scope, _key(name))]
            except KeyError:
                raise UnknownItemError(LEVEL_NAMES[level], name) from None
            scope = scope + (segment,)
        if len(scope) != self.levels:
            raise ValueError(f"item needs {self.levels} names, got {len(scope)}")
        return "".join(scope)

    def decode_prefix(self, code: str) -> tuple[str, ...]:
        """Names for every complete segment of `code` (a level code or full code)."""
        d = self.digits_per_level
        if not code.isdigit() or len(code) % d or not 0 < len(code) // d <= self.levels:
            raise UnknownCodeError("category", code)
        segments = [code[i:i + d] for i in range(0, len(code), d)]
        names = []
        for level, seg in enumerate(segments):
            try:
                names.append(self._inverse[level][(tuple(segments[:level]), seg)])
            except KeyError:
                raise UnknownCodeError(LEVEL_NAMES[level], code) from None
        return tuple(names)

    def decode(self, code: str) -> ItemDescription:
        if len(code) != self.code_width:
            raise UnknownCodeError("category", code)
        return ItemDescription(*self.decode_prefix(code))


def load_codebook(category_table: Iterable[Sequence[str]],
                  brand_table: Iterable[Sequence[str]],
                  pack_table: Iterable[Sequence[str]],
                  digits_per_level: int = DIGITS_PER_LEVEL) -> CodeBook:
    """Build a code book from row iterables.

    Rows are ``(name, seg)``, ``(cat_seg, name, seg)`` and
    ``(cat_seg, brand_seg, name, seg)`` respectively.
    """
    book = CodeBook(digits_per_level)
    for level, table in enumerate((category_table, brand_table, pack_table)):
        for row_no, row in enumerate(table, 1):
            row = [field.strip() for field in row]
            if len(row) != level + 2:
                raise SegmentFormatError(
                    f"{LEVEL_NAMES[level]} row {row_no}: expected {level + 2} fields, got {len(row)}")
            *scope, name, segment = row
            book._add(level, tuple(scope), name, segment, row_no)
    return book


def read_code_table(path: str | Path) -> list[list[str]]:
    """Tab-separated rows; blank lines and ``#`` comments are skipped."""
    with open(path, encoding="utf-8", newline="") as fh:
        lines = (line for line in fh if line.strip() and not line.lstrip().startswith("#"))
        return [row for row in csv.reader(lines, delimiter="\t", quoting=csv.QUOTE_NONE)]


def load_codebook_files(category_path, brand_path, pack_path,
                        digits_per_level: int = DIGITS_PER_LEVEL) -> CodeBook:
    return load_codebook(read_code_table(category_path), read_code_table(brand_path),
                         read_code_table(pack_path), digits_per_level)


def encode_item(book: CodeBook, item: Sequence[str]) -> str:
    return book.encode(item)


def decode_item(book: CodeBook, code: str) -> ItemDescription:
    return book.decode(code)


def encode_transactions(book: CodeBook, transactions: Iterable[Iterable[Sequence[str]]]):
    """Code every item of every transaction; returns a fixed-width Dataset."""
    from .io import Dataset

    rows = []
    for row_no, items in enumerate(transactions, 1):
        coded = []
        for item in items:
            try:
                coded.append(int(book.encode(item)))
            except UnknownItemError as exc:
                raise UnknownItemError(exc.level, exc.name, row=row_no) from None
        rows.append(coded)
    return Dataset.from_transactions(rows, width=book.code_width)


_ITEM_RE = re.compile(r"^([^()]+)\(([^()]+)\(([^()]+)\)\)$")


def parse_item_text(text: str) -> ItemDescription:
    """Parse the nested notation ``Milk(Amul(200ml))``."""
    m = _ITEM_RE.match(text.strip())
    if m is None:
        raise TokenFormatError(f"cannot parse item {text.strip()!r}; expected Category(Brand(Pack))")
    return ItemDescription(*(g.strip() for g in m.groups()))


def parse_transaction_text(line: str) -> list[ItemDescription]:
    """Split ``{A(B(C)), D(E(F))}`` on top-level commas."""
    body = line.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    items, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append(body[start:i])
            start = i + 1
    items.append(body[start:])
    return [parse_item_text(part) for part in items if part.strip()]


def read_item_file(path: str | Path) -> list[list[ItemDescription]]:
    """One transaction per non-blank line in nested notation."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for row_no, line in enumerate(fh, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                out.append(parse_transaction_text(line))
            except TokenFormatError as exc:
                raise TokenFormatError(str(exc), row=row_no, path=path) from None
    return out


def format_names(names: Sequence[str]) -> str:
    """Render ``("Milk", "Amul", "200ml")`` as ``Milk(Amul(200ml))``."""
    head, *rest = names
    return head + "".join(f"({n}" for n in rest) + ")" * len(rest)
