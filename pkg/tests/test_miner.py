import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hiermine import kernels
from hiermine.errors import ConfigError, EmptyInputError
from hiermine.io import Dataset
from hiermine.miner import FrequentItemsets, MiningConfig, absolute_threshold, mine_frequent

from conftest import SAMPLE_ROWS
from oracles import brute_force_frequent, containment_count


@pytest.mark.parametrize("minsup, n, expected", [
    (0.5, 5, 3), (0.07, 100, 7), (0.01, 100_000, 1000), (0.01, 5, 1), (1.0, 5, 5),
    (0.3, 10, 3), (0.35, 10, 4),
])
def test_absolute_threshold(minsup, n, expected):
    assert absolute_threshold(minsup, n) == expected


@pytest.mark.parametrize("bad", [0, -0.1, 1.5, "0.5"])
def test_config_rejects_minsup(bad):
    with pytest.raises(ConfigError):
        MiningConfig(bad)


def test_config_rejects_level():
    with pytest.raises(ConfigError):
        MiningConfig(0.5, level=4)


def test_sample_data_level3(sample_data, kernel):
    freq = mine_frequent(sample_data, MiningConfig(0.5), kernel=kernel)
    assert freq.counts == {(113001,): 3}


def test_projected_sample_data(kernel):
    level1 = Dataset.from_transactions([[x // 10000 for x in t] for t in SAMPLE_ROWS])
    freq = mine_frequent(level1, MiningConfig(0.5), kernel=kernel)
    assert freq.counts == {(10,): 4, (11,): 5, (12,): 3, (10, 11): 4, (11, 12): 3}


def test_minsup_one_is_intersection(kernel):
    rows = [[1, 2, 3, 9], [2, 3, 9], [0, 2, 3, 9, 7]]
    freq = mine_frequent(Dataset.from_transactions(rows), MiningConfig(1.0), kernel=kernel)
    common = set.intersection(*map(set, rows))
    assert set(freq.counts) == {s for s in brute_force_frequent(rows, 1.0)}
    assert all(set(s) <= common for s in freq.counts)
    assert freq.counts[tuple(sorted(common))] == 3


def test_empty_dataset():
    with pytest.raises(EmptyInputError):
        mine_frequent(Dataset.from_transactions([]), MiningConfig(0.5))


def test_no_frequent_items():
    freq = mine_frequent(Dataset.from_transactions([[1], [2], [3]]), MiningConfig(0.5))
    assert len(freq) == 0


def test_max_itemset_size():
    rows = [[1, 2, 3]] * 4
    freq = mine_frequent(Dataset.from_transactions(rows), MiningConfig(0.5, max_itemset_size=2))
    assert freq.max_size == 2 and len(freq) == 6
    freq = mine_frequent(Dataset.from_transactions(rows), MiningConfig(0.5, max_itemset_size=1))
    assert freq.max_size == 1


def test_threads_identical(sample_data):
    a = mine_frequent(sample_data, MiningConfig(0.2), threads=1)
    b = mine_frequent(sample_data, MiningConfig(0.2), threads=3)
    assert a == b


def test_serialization_order_and_round_trip(sample_data):
    freq = mine_frequent(sample_data, MiningConfig(0.2))
    out = io.StringIO()
    freq.write(out)
    body = [line for line in out.getvalue().splitlines() if not line.startswith("#")]
    keys = [tuple(int(x) for x in line.split("\t")[0].split()) for line in body]
    assert keys == sorted(keys, key=lambda s: (len(s), s))
    again = FrequentItemsets.read(io.StringIO(out.getvalue()))
    assert again == freq and again.width == 6


datasets = st.lists(st.lists(st.integers(0, 14), max_size=10), min_size=1, max_size=60)


@settings(max_examples=150, deadline=None)
@given(datasets, st.sampled_from([0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.0]))
def test_matches_exhaustive_oracle(rows, minsup):
    expected = brute_force_frequent(rows, minsup)
    for name in kernels.available():
        freq = mine_frequent(Dataset.from_transactions(rows), MiningConfig(minsup),
                             kernel=kernels.get(name))
        assert freq.counts == expected, name


@settings(max_examples=80, deadline=None)
@given(datasets, st.floats(0.05, 0.9))
def test_downward_closure_and_exact_counts(rows, minsup):
    freq = mine_frequent(Dataset.from_transactions(rows), MiningConfig(minsup))
    thr = absolute_threshold(minsup, len(rows))
    for s, c in freq.counts.items():
        assert c >= thr
        assert c == containment_count(rows, s)
        for i in range(len(s)):
            if len(s) > 1:
                assert s[:i] + s[i + 1:] in freq.counts


@settings(max_examples=60, deadline=None)
@given(datasets, st.floats(0.05, 0.9), st.floats(0.05, 0.9))
def test_anti_monotone_threshold(rows, a, b):
    a, b = min(a, b), max(a, b)
    data = Dataset.from_transactions(rows)
    assert set(mine_frequent(data, MiningConfig(b)).counts) <= set(
        mine_frequent(data, MiningConfig(a)).counts)


def test_deterministic_repeat():
    rng = np.random.default_rng(1)
    rows = [rng.choice(30, size=8, replace=False) for _ in range(300)]
    data = Dataset.from_transactions(rows)
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        mine_frequent(data, MiningConfig(0.05)).write(buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
