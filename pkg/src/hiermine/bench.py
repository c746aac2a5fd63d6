"""Timing harness: minimum support x hierarchy level sweeps.

Every (minsup, level) cell mines a dataset already loaded in memory
`repeats` times and reports the individual wall-clock times and their
mean.  File loading and cleaning are outside the timed region unless
``include_cleaning_time`` is set.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import platform
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence, TextIO

from . import kernels
from .clean import clean_lines
from .codec import DIGITS_PER_LEVEL, LEVELS
from .errors import ConfigError, UncleanedInputError
from .io import read_dat, read_dat_file
from .miner import MiningConfig, mine_frequent
from .multilevel import mine_level, project_to_level
from .rules import generate_rules

log = logging.getLogger(__name__)

DEFAULT_MINSUPS = (0.50, 0.05, 0.03, 0.02, 0.01)


@dataclass(frozen=True)
class BenchPlan:
    dataset: str | Path
    levels: Sequence[int] = (1, 2, 3)
    minsups: Sequence[float] = DEFAULT_MINSUPS
    repeats: int = 3
    include_cleaning_time: bool = False
    time_projection: bool = True
    with_rules: bool = False
    min_confidence: float = 0.5
    threads: int = 1
    width: int = LEVELS * DIGITS_PER_LEVEL

    def __post_init__(self):
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        if not self.minsups or any(not 0 < m <= 1 for m in self.minsups):
            raise ConfigError("every minsup must be in (0, 1]")
        if len(set(self.minsups)) != len(self.minsups):
            raise ConfigError("minsups must be distinct")
        if not self.levels or any(not 1 <= lv <= LEVELS for lv in self.levels):
            raise ConfigError(f"levels must be within 1..{LEVELS}")


@dataclass
class BenchRow:
    minsup: float
    level: int
    runs: list[float]
    n_itemsets: int = 0
    n_rules: int | None = None

    @property
    def mean(self) -> float:
        return sum(self.runs) / len(self.runs)


@dataclass
class BenchReport:
    rows: list[BenchRow]
    metadata: dict = field(default_factory=dict)

    def cell(self, minsup: float, level: int) -> BenchRow:
        for row in self.rows:
            if row.minsup == minsup and row.level == level:
                return row
        raise KeyError((minsup, level))


def _load(plan: BenchPlan):
    return read_dat_file(plan.dataset, width="auto")


def run_benchmark(plan: BenchPlan, data=None) -> BenchReport:
    """Run every cell of `plan`.  A pre-loaded `data` skips reading the file."""
    path = Path(plan.dataset)
    raw_lines = None
    if plan.include_cleaning_time:
        raw_lines = path.read_text(encoding="ascii").splitlines()
    if data is None:
        data = _load(plan)
    if data.width is None and any(lv < LEVELS for lv in plan.levels) and not plan.include_cleaning_time:
        raise UncleanedInputError(
            f"{path}: codes are not of one fixed width; run `hiermine clean` before "
            "benchmarking levels below the deepest")
    metadata = {
        "dataset": path.name,
        "n_transactions": data.n_transactions,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "environment": f"{platform.python_implementation()} {platform.python_version()} "
                       f"{platform.machine()} kernel={kernels.NAME} threads={plan.threads}",
    }
    resolution = time.get_clock_info("perf_counter").resolution
    if resolution > 1e-3:
        metadata["warning"] = f"timer resolution {resolution:g}s is coarser than 1 ms"
        log.warning(metadata["warning"])
    nondeterministic = []
    rows = []
    for minsup in sorted(plan.minsups, reverse=True):
        for level in sorted(plan.levels):
            config = MiningConfig(minsup, level=level)
            if not plan.time_projection and not plan.include_cleaning_time:
                source = project_to_level(data, level) if data.width else data
                target = lambda: mine_frequent(source, config, threads=plan.threads)  # noqa: E731
            elif plan.include_cleaning_time:
                def target(config=config):
                    cleaned = read_dat(clean_lines(raw_lines, plan.width), width=plan.width)
                    return mine_level(cleaned, config, threads=plan.threads)
            else:
                target = lambda: mine_level(data, config, threads=plan.threads)  # noqa: E731
            runs, first, n_rules = [], None, None
            for _ in range(plan.repeats):
                t0 = time.perf_counter()
                freq = target()
                if plan.with_rules:
                    n_rules = len(generate_rules(freq, plan.min_confidence))
                runs.append(time.perf_counter() - t0)
                if first is None:
                    first = freq
                elif freq != first:
                    nondeterministic.append((minsup, level))
            rows.append(BenchRow(minsup, level, runs, len(first), n_rules))
            log.info("minsup=%g level=%d mean=%.3fs", minsup, level, rows[-1].mean)
    if nondeterministic:
        metadata["nondeterministic"] = nondeterministic
    return BenchReport(rows, metadata)


def trend_violations(report: BenchReport) -> list[str]:
    """Adjacent comparisons where time moves against the expected direction:
    it should not fall as minsup decreases nor as the level deepens."""
    minsups = sorted({r.minsup for r in report.rows}, reverse=True)
    levels = sorted({r.level for r in report.rows})
    out = []
    for lv in levels:
        for hi, lo in zip(minsups, minsups[1:]):
            a, b = report.cell(hi, lv).mean, report.cell(lo, lv).mean
            if b < a:
                out.append(f"level {lv}: minsup {lo:g} took {b:.3f}s < {a:.3f}s at {hi:g}")
    for ms in minsups:
        for shallow, deep in zip(levels, levels[1:]):
            a, b = report.cell(ms, shallow).mean, report.cell(ms, deep).mean
            if b < a:
                out.append(f"minsup {ms:g}: level {deep} took {b:.3f}s < {a:.3f}s at level {shallow}")
    return out


def n_trend_comparisons(report: BenchReport) -> int:
    n_m = len({r.minsup for r in report.rows})
    n_l = len({r.level for r in report.rows})
    return n_l * (n_m - 1) + n_m * (n_l - 1)


def _fmt_minsup(m: float) -> str:
    return f"{m:.2f}" if round(m, 2) == m else repr(m)


def write_csv(report: BenchReport, sink: TextIO) -> None:
    """``dataset,minsup,level,run1_s,...,runN_s,mean_s``; 3-decimal floats."""
    n_runs = max(len(r.runs) for r in report.rows) if report.rows else 0
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["dataset", "minsup", "level"] + [f"run{i}_s" for i in range(1, n_runs + 1)]
               + ["mean_s"])
    name = report.metadata.get("dataset", "")
    for r in report.rows:
        w.writerow([name, _fmt_minsup(r.minsup), r.level] + [f"{t:.3f}" for t in r.runs]
                   + [f"{r.mean:.3f}"])


def read_csv(source: TextIO) -> BenchReport:
    rows = []
    name = ""
    for rec in csv.DictReader(source):
        name = rec["dataset"]
        runs = [float(v) for k, v in rec.items() if k.startswith("run")]
        rows.append(BenchRow(float(rec["minsup"]), int(rec["level"]), runs))
    return BenchReport(rows, {"dataset": name})


def format_table(report: BenchReport) -> str:
    """Wide layout: one row per minsup, one mean-seconds column per level."""
    levels = sorted({r.level for r in report.rows})
    buf = io.StringIO()
    title = report.metadata.get("dataset")
    if title:
        buf.write(f"{title}\n")
    buf.write("Min Support\t" + "\t".join(f"Level {lv}" for lv in levels) + "\n")
    for ms in sorted({r.minsup for r in report.rows}, reverse=True):
        cells = [f"{report.cell(ms, lv).mean:.2f}" for lv in levels]
        buf.write(_fmt_minsup(ms) + "\t" + "\t".join(cells) + "\n")
    return buf.getvalue()


def threads_from_env(default: int = 1) -> int:
    raw = os.environ.get("HIERMINE_THREADS")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"HIERMINE_THREADS must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError("HIERMINE_THREADS must be >= 1")
    return value
