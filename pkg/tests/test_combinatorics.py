from __future__ import annotations

import itertools
import random
from collections import Counter
from math import comb

import pytest
from hypothesis import given, strategies as st

from faberkit.combinatorics import (
    BlockProfile,
    block_profiles,
    bounded_compositions,
    coefficient_of_product,
    compositions,
    profile_census,
    set_partitions,
    truncated_product,
)

from oracles import bell, ordered_partitions, stirling2


def test_set_partitions_small_count():
    assert len(list(set_partitions(4, 2))) == 7


@pytest.mark.parametrize("n", range(1, 7))
def test_extreme_block_counts(n):
    assert list(set_partitions(n, n)) == [tuple((i,) for i in range(n))]
    assert list(set_partitions(n, 1)) == [(tuple(range(n)),)]


@pytest.mark.parametrize("n", range(1, 9))
def test_partition_counts_are_bell_numbers(n):
    per_k = [len(list(set_partitions(n, k))) for k in range(1, n + 1)]
    assert per_k == [stirling2(n, k) for k in range(1, n + 1)]
    assert sum(per_k) == bell(n)


@pytest.mark.parametrize("n, k", [(0, 1), (3, 0), (3, 4)])
def test_set_partitions_out_of_range_is_empty(n, k):
    assert list(set_partitions(n, k)) == []


@pytest.mark.parametrize("n", range(1, 6))
def test_set_partitions_match_ordered_oracle(n):
    for k in range(1, n + 1):
        ours = {frozenset(frozenset(b) for b in p) for p in set_partitions(n, k)}
        theirs = {frozenset(frozenset(b) for b in p) for p in ordered_partitions(n, k)}
        assert ours == theirs
        assert len(ours) == len(list(set_partitions(n, k)))


def test_set_partitions_canonical_block_order():
    for p in set_partitions(5, 3):
        assert [b[0] for b in p] == sorted(b[0] for b in p)
        assert all(list(b) == sorted(b) for b in p)


def test_enumeration_is_deterministic():
    assert list(set_partitions(6, 3)) == list(set_partitions(6, 3))
    assert list(compositions(5, 4)) == list(compositions(5, 4))


def test_compositions_values():
    assert len(list(compositions(2, 3))) == 6
    assert list(compositions(0, 4)) == [(0, 0, 0, 0)]
    assert list(compositions(7, 1)) == [(7,)]


@given(st.integers(0, 8), st.integers(1, 5))
def test_compositions_count_and_order(total, k):
    out = list(compositions(total, k))
    assert len(out) == comb(total + k - 1, k - 1)
    assert out == sorted(out)
    assert all(sum(c) == total and min(c) >= 0 for c in out)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 4)), min_size=1, max_size=4), st.integers(-6, 10))
def test_bounded_compositions_match_filter(bounds, total):
    lows = [lo for lo, _ in bounds]
    highs = [lo + w for lo, w in bounds]
    expected = [d for d in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))) if sum(d) == total]
    assert list(bounded_compositions(total, lows, highs)) == expected


def test_profile_census_small():
    totals = [sum(profile_census((1, 1, 1), k).values()) for k in (1, 2, 3)]
    assert totals == [1, 3, 1]


def test_profile_census_distinct_powers_of_two():
    a = (1, 2, 4, 8, 16)
    for k in range(1, 6):
        census = profile_census(a, k)
        assert set(census.values()) == {1}
        assert len(census) == stirling2(5, k)


def _weight(profiles: tuple[BlockProfile, ...]) -> int:
    # arbitrary block-symmetric weight
    w = 1
    for x, s in profiles:
        w *= (3 * x + 1) ** s - x
    return w


def test_census_equals_direct_enumeration():
    rng = random.Random(97)
    for _ in range(50):
        n = rng.randint(1, 7)
        a = [rng.randint(0, 10) for _ in range(n)]
        for k in range(1, n + 1):
            via_census = sum(m * _weight(p) for p, m in profile_census(a, k).items())
            direct = sum(_weight(block_profiles(a, p)) for p in set_partitions(n, k))
            assert via_census == direct


def test_census_keys_are_sorted_profiles():
    for key in profile_census((3, 0, 2, 2), 2):
        assert list(key) == sorted(key)
        assert all(isinstance(b, BlockProfile) for b in key)


@given(st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=5), min_size=1, max_size=4), st.integers(0, 10))
def test_truncated_product_matches_brute_force(series, total):
    brute = Counter()
    for idx in itertools.product(*(range(len(s)) for s in series)):
        v = 1
        for s, i in zip(series, idx):
            v *= s[i]
        brute[sum(idx)] += v
    assert truncated_product(series, total) == [brute[i] for i in range(total + 1)]
    assert coefficient_of_product(series, total) == brute[total]


def test_coefficient_of_product_negative_total():
    assert coefficient_of_product([[1, 2]], -1) == 0
