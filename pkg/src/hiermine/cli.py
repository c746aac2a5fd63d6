"""``hiermine`` command line: encode, decode, clean, mine, rules, bench, synth."""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys
from pathlib import Path

from . import __version__
from .bench import (DEFAULT_MINSUPS, BenchPlan, format_table, run_benchmark, threads_from_env,
                    trend_violations, write_csv)
from .clean import CleaningConfig, clean_stream
from .codec import encode_transactions, format_names, load_codebook_files, read_item_file
from .errors import HiermineError
from .io import read_dat_file, write_dat
from .miner import FrequentItemsets, MiningConfig
from .multilevel import mine_level
from .rules import generate_rules, write_rules

log = logging.getLogger("hiermine")

ITEMSETS_MAGIC = "# hiermine itemsets"


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


@contextlib.contextmanager
def _open_in(path):
    if path in (None, "-"):
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _codebook(args):
    return load_codebook_files(args.categories, args.brands, args.packs)


def cmd_encode(args):
    book = _codebook(args)
    data = encode_transactions(book, read_item_file(args.input))
    with _open_out(args.output) as out:
        write_dat(data, out)


def _decode_codes(book, tokens):
    return "{" + ", ".join(format_names(book.decode_prefix(t)) for t in tokens) + "}"


def cmd_decode(args):
    book = _codebook(args)
    with _open_in(args.input) as src, _open_out(args.output) as out:
        for line in src:
            if line.startswith("#") or not line.strip():
                out.write(line)
                continue
            codes, _, rest = line.rstrip("\n").partition("\t")
            if "->" in codes:
                lhs, rhs = codes.split("->")
                text = _decode_codes(book, lhs.split()) + " -> " + _decode_codes(book, rhs.split())
            else:
                text = _decode_codes(book, codes.split())
            out.write(text + ("\t" + rest if rest else "") + "\n")


def cmd_clean(args):
    config = CleaningConfig(args.width)
    with _open_in(args.input) as src, _open_out(args.output) as out:
        clean_stream(src, out, config, path=args.input)


def _mine(args) -> FrequentItemsets:
    data = read_dat_file(args.input, width=args.width if args.width else "auto")
    config = MiningConfig(args.minsup, level=args.level, max_itemset_size=args.max_size)
    return mine_level(data, config, threads=args.threads)


def cmd_mine(args):
    freq = _mine(args)
    with _open_out(args.output) as out:
        freq.write(out)


def cmd_rules(args):
    with open(args.input, encoding="utf-8") as fh:
        is_itemsets = fh.readline().startswith(ITEMSETS_MAGIC)
    if is_itemsets:
        with open(args.input, encoding="utf-8") as fh:
            freq = FrequentItemsets.read(fh)
    else:
        if args.minsup is None:
            raise HiermineError("rules from a .dat file need --minsup")
        freq = _mine(args)
    rules = generate_rules(freq, args.minconf)
    with _open_out(args.output) as out:
        write_rules(rules, out, fmt=freq.format_item)


def cmd_bench(args):
    plan = BenchPlan(
        dataset=args.input,
        levels=args.levels,
        minsups=args.minsup,
        repeats=args.repeats,
        include_cleaning_time=args.include_cleaning_time,
        time_projection=args.time_projection,
        with_rules=args.with_rules,
        min_confidence=args.minconf,
        threads=args.threads,
        width=args.width or 6,
    )
    report = run_benchmark(plan)
    with _open_out(args.output) as out:
        if args.format == "table":
            out.write(format_table(report))
        else:
            write_csv(report, out)
    for msg in trend_violations(report):
        log.warning("trend: %s", msg)


def cmd_synth(args):
    from .synth import generate

    data = generate(n_transactions=args.transactions, seed=args.seed)
    with _open_out(args.output) as out:
        write_dat(data, out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiermine", description="Multilevel frequent itemset and association rule mining")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p, input_help="input file"):
        p.add_argument("--input", required=True, help=input_help)
        p.add_argument("--output", "--out", default="-", help="output file (default stdout)")

    def table_args(p):
        p.add_argument("--categories", required=True, help="category code table (name, segment)")
        p.add_argument("--brands", required=True, help="brand code table (category, name, segment)")
        p.add_argument("--packs", required=True,
                       help="pack code table (category, brand, name, segment)")

    def mine_args(p, minsup_required=True):
        p.add_argument("--minsup", type=float, required=minsup_required,
                       help="minimum support as a fraction of transactions")
        p.add_argument("--level", type=int, default=3, help="hierarchy level 1..3 (default 3)")
        p.add_argument("--width", type=int, default=None,
                       help="code width of the input; detected when all tokens agree")
        p.add_argument("--threads", type=int, default=None,
                       help="counting workers (default $HIERMINE_THREADS or 1)")
        p.add_argument("--max-size", type=int, default=None, help="largest itemset size to mine")

    p = sub.add_parser("encode", help="code an item file with the code tables")
    io_args(p, "transactions, one per line, items as Category(Brand(Pack))")
    table_args(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="render an itemsets or rules file with item names")
    io_args(p)
    table_args(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("clean", help="pad every code to a fixed width")
    io_args(p, ".dat file to clean")
    p.add_argument("--width", type=int, default=6, help="target digit count (default 6)")
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("mine", help="frequent itemsets at a hierarchy level")
    io_args(p, ".dat file")
    mine_args(p)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("rules", help="association rules from an itemsets file or a .dat file")
    io_args(p, "itemsets file written by `mine`, or a .dat file")
    mine_args(p, minsup_required=False)
    p.add_argument("--minconf", type=float, default=0.5, help="minimum confidence (default 0.5)")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("bench", help="time mining over a minsup x level grid")
    io_args(p, ".dat file (cleaned to a fixed width for levels below 3)")
    p.add_argument("--minsup", type=_float_list, default=list(DEFAULT_MINSUPS),
                   help="comma-separated minimum supports (default 0.5,0.05,0.03,0.02,0.01)")
    p.add_argument("--levels", type=_int_list, default=[1, 2, 3], help="comma-separated levels")
    p.add_argument("--repeats", type=int, default=3, help="observations per cell (default 3)")
    p.add_argument("--threads", type=int, default=None,
                   help="counting workers (default $HIERMINE_THREADS or 1)")
    p.add_argument("--format", choices=["csv", "table"], default="csv")
    p.add_argument("--with-rules", action="store_true", help="also time rule generation")
    p.add_argument("--minconf", type=float, default=0.5, help="confidence for --with-rules")
    p.add_argument("--time-projection", type=_bool, default=True, metavar="BOOL",
                   help="include level projection in the timed region (default true)")
    p.add_argument("--include-cleaning-time", action="store_true",
                   help="clean the raw file inside every timed run")
    p.add_argument("--width", type=int, default=None, help="code width for in-run cleaning")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("synth", help="write a synthetic hierarchical coded dataset")
    p.add_argument("--output", "--out", default="-")
    p.add_argument("--transactions", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if hasattr(args, "threads"):
        try:
            args.threads = args.threads if args.threads is not None else threads_from_env()
        except HiermineError as exc:
            parser.error(str(exc))
        if args.threads < 1:
            parser.error("--threads must be >= 1")
    try:
        args.func(args)
    except HiermineError as exc:
        print(f"hiermine {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"hiermine {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
