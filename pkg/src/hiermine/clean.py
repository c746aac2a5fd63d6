"""Width normalisation of coded transaction files.

Codes shorter than the target width are padded by repeating their own
digits from the left: ``"1020"`` becomes ``"102010"`` at width 6.  Output is
written in canonical form, one transaction per line, single spaces between
tokens, trailing newline.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .errors import ConfigError, TokenFormatError, TokenOverflowError


@dataclass(frozen=True)
class CleaningConfig:
    n: int = 6

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"target width must be a positive integer, got {self.n!r}")


def _is_digits(token: str) -> bool:
    return token.isascii() and token.isdigit()


def clean_code(raw: str, n: int) -> str:
    """Pad `raw` to exactly `n` digits by cyclic repetition of its digits."""
    if not raw or not _is_digits(raw):
        raise TokenFormatError(f"token {raw!r} is not a decimal code")
    if len(raw) > n:
        raise TokenOverflowError(f"token {raw!r} has more than {n} digits")
    reps = -(-n // len(raw))
    return (raw * reps)[:n]


def clean_lines(lines: Iterable[str], n: int, path=None) -> Iterator[str]:
    """Yield canonical cleaned lines (with newline) for each input line."""
    for row, line in enumerate(lines, 1):
        out = []
        for col, token in enumerate(line.split(), 1):
            try:
                out.append(clean_code(token, n))
            except TokenFormatError as exc:
                raise type(exc)(exc.args[0], row=row, column=col, path=path) from None
        yield " ".join(out) + "\n"


def clean_stream(source: TextIO, sink: TextIO, config: CleaningConfig = CleaningConfig(),
                 path=None) -> int:
    """Stream-clean `source` into `sink`; returns the number of lines written."""
    count = 0
    for line in clean_lines(source, config.n, path=path):
        sink.write(line)
        count += 1
    return count


def clean_text(text: str, n: int = 6) -> str:
    return "".join(clean_lines(text.splitlines(), n))


def clean_file(input_path, output_path, config: CleaningConfig = CleaningConfig()) -> int:
    """Clean `input_path` into `output_path`.

    The output is written to a temporary sibling and renamed, so a failure
    part-way leaves no truncated output behind.
    """
    tmp = f"{output_path}.tmp{os.getpid()}"
    try:
        with open(input_path, encoding="ascii", errors="replace") as src, \
                open(tmp, "w", encoding="ascii", newline="\n") as dst:
            count = clean_stream(src, dst, config, path=input_path)
        os.replace(tmp, output_path)
    except OSError as exc:
        raise OSError(exc.errno, f"{exc.strerror}: {exc.filename or input_path}") from exc
    finally:
        if os.path.exists(tmp):
            os.remove(tmp)
    return count
