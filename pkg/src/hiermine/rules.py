"""Association rules from frequent itemsets."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from itertools import combinations
from typing import Iterable, TextIO

from .errors import ClosureViolationError, ConfigError, NotFrequentError
from .miner import FrequentItemsets


@dataclass(frozen=True)
class Rule:
    antecedent: tuple[int, ...]
    consequent: tuple[int, ...]
    support: float
    confidence: float
    count: int = 0
    antecedent_count: int = 0


def rule_metrics(freq: FrequentItemsets, antecedent: Iterable[int],
                 consequent: Iterable[int]) -> tuple[float, float]:
    """``(support, confidence)`` of ``antecedent -> consequent``."""
    a = tuple(sorted(antecedent))
    b = tuple(sorted(consequent))
    if not a or not b:
        raise ValueError("antecedent and consequent must be non-empty")
    if set(a) & set(b):
        raise ValueError(f"antecedent {list(a)} and consequent {list(b)} overlap")
    union = tuple(sorted(a + b))
    for s in (union, a):
        if s not in freq.counts:
            raise NotFrequentError(s)
    c = freq.counts[union]
    return c / freq.n_transactions, c / freq.counts[a]


def generate_rules(freq: FrequentItemsets, min_confidence: float) -> list[Rule]:
    """Every rule ``A -> B`` with ``A | B`` frequent and confidence at least
    `min_confidence`, ordered by confidence, then support (both
    descending), then antecedent and consequent."""
    if not (isinstance(min_confidence, (int, float)) and 0 < min_confidence <= 1):
        raise ConfigError(f"min_confidence must be in (0, 1], got {min_confidence!r}")
    conf = Decimal(str(min_confidence))
    n = freq.n_transactions
    counts = freq.counts
    out = []
    for itemset, c in counts.items():
        k = len(itemset)
        if k < 2:
            continue
        for r in range(1, k):
            for a in combinations(itemset, r):
                ca = counts.get(a)
                if ca is None:
                    raise ClosureViolationError(
                        f"subset {list(a)} of frequent {list(itemset)} is missing")
                assert ca > 0
                if c < conf * ca:
                    continue
                b = tuple(x for x in itemset if x not in a)
                out.append(Rule(a, b, c / n, c / ca, c, ca))
    # int/int division is correctly rounded, so equal ratios compare equal
    out.sort(key=lambda r: (-r.confidence, -r.count, r.antecedent, r.consequent))
    return out


def format_rule(rule: Rule, fmt=str) -> str:
    return (" ".join(fmt(x) for x in rule.antecedent) + " -> "
            + " ".join(fmt(x) for x in rule.consequent)
            + f"\t{rule.support:.6f}\t{rule.confidence:.6f}")


def write_rules(rules: Iterable[Rule], sink: TextIO, fmt=str) -> None:
    for rule in rules:
        sink.write(format_rule(rule, fmt) + "\n")
