from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from faberkit.correlators import (
    CorrelatorKey,
    CorrelatorSystem,
    correlator_key,
    correlator_value,
    example1_initial,
    example1_system,
    example2_closed_form,
    example2_initial,
    example2_system,
    make_delta_system,
)

from oracles import example1_literal, example2_literal


def key(g, *idx):
    return correlator_key(g, idx)


@pytest.mark.parametrize(
    "system, g, idx, expected",
    [
        (example2_system(), 2, (1, 1), 6),
        (example2_system(), 2, (3, -1), Fraction(-2, 5)),
        (example1_system(), 2, (3, -1), 0),
        (example1_system(), 2, (2, 0), 2),
        (example2_system(), 2, (2, 0), 2),
    ],
)
def test_correlator_values(system, g, idx, expected):
    assert correlator_value(system, key(g, *idx)) == expected


def test_example1_initial_values():
    assert example1_initial(key(2, 3, -1)) == 0
    assert example1_initial(key(3, 2, 1)) == 40
    assert example1_initial(key(2, 1, 1)) == 6


@pytest.mark.parametrize("g, idx, formula", [(2, (1, 2), 2), (3, (2, 2), Fraction(40, 3))])
def test_dimension_defective_keys_are_rejected(g, idx, formula):
    # index sums exceed g - 2 + k by one
    with pytest.raises(ValueError):
        correlator_key(g, idx)
    assert example2_closed_form(g, idx) == formula


def test_example2_initial_values():
    assert example2_initial(key(2, 1, 1)) == 6
    assert example2_initial(key(2, 3, -1)) == Fraction(-2, 5)
    assert example2_initial(key(2, 4, -2)) == Fraction(6, 35)


def test_initial_values_reject_zero_index():
    with pytest.raises(ValueError):
        example1_initial(CorrelatorKey(2, (0, 2)))
    with pytest.raises(ValueError):
        example2_initial(CorrelatorKey(2, (0, 2)))


def test_key_validation():
    with pytest.raises(ValueError):
        key(1, 0)
    with pytest.raises(ValueError):
        correlator_key(2, ())
    assert key(2, 2, 0, 1).indices == (0, 1, 2)


def test_lone_tau_zero_rejected():
    with pytest.raises(ValueError):
        example1_system().value(CorrelatorKey(2, (0,)))


def test_delta_system():
    base = example1_system()
    target = key(2, 3, -1)
    perturbed = make_delta_system(base, target)
    assert correlator_value(perturbed, target) == 1
    assert correlator_value(base, target) == 0
    # the string equation carries the change to keys with zeros
    assert perturbed(2, (4, -1, 0)) - base(2, (4, -1, 0)) == 1


@pytest.mark.parametrize("idx", [(1, 1), (0, 2)])
def test_delta_system_rejects_bad_targets(idx):
    with pytest.raises(ValueError):
        make_delta_system(example1_system(), CorrelatorKey(2, idx))


def _keys(g: int, k: int, lo: int, hi: int):
    for idx in itertools.product(range(lo, hi + 1), repeat=k):
        if sum(idx) == g - 2 + k and not (k == 1 and idx == (0,)):
            yield idx


@pytest.mark.parametrize("g", [2, 3, 4])
def test_example1_matches_literal_closure(g):
    system = example1_system()
    for k in range(1, 5):
        for idx in _keys(g, k, -3, g + 2):
            assert system(g, idx) == example1_literal(g, tuple(idx))


@pytest.mark.parametrize("g", [2, 3, 4])
def test_example2_closure_reproduces_closed_formula(g):
    system = example2_system()
    for k in range(1, 5):
        for idx in _keys(g, k, -4, g + 3):
            assert system(g, idx) == example2_literal(g, idx)


@pytest.mark.parametrize("g", [2, 3, 4])
def test_examples_agree_on_positive_keys(g):
    e1, e2 = example1_system(), example2_system()
    for k in range(1, 5):
        for idx in _keys(g, k, 1, g + 2):
            assert e1(g, idx) == e2(g, idx)


def test_examples_agree_when_expansion_stays_nonnegative():
    e1, e2 = example1_system(), example2_system()
    # every index at least 1 before the zeros are stripped
    assert e1(4, (2, 2, 2, 0)) == e2(4, (2, 2, 2, 0))
    assert e1(3, (2, 2, 0)) == e2(3, (2, 2, 0))


def test_examples_differ_once_negatives_appear():
    assert example1_system()(2, (3, 0, 0)) != example2_system()(2, (3, 0, 0))


@given(st.lists(st.integers(-3, 5), min_size=0, max_size=3), st.integers(2, 4), st.data())
def test_symmetry_under_permutation(head, g, data):
    # the last index is fixed by sum(d) = g - 2 + k
    k = len(head) + 1
    idx = head + [g - 2 + k - sum(head)]
    if idx == [0]:
        return
    shuffled = data.draw(st.permutations(idx))
    for system in (example1_system(), example2_system()):
        assert system(g, idx) == system(g, shuffled)


def test_memoization_is_transparent():
    cached = example1_system(memoize=True)
    plain = example1_system(memoize=False)
    for idx in _keys(3, 4, -2, 4):
        assert cached(3, idx) == plain(3, idx)
    cached.clear_cache()
    assert cached(3, (2, 1)) == plain(3, (2, 1))


def test_custom_system():
    sys_ = CorrelatorSystem(lambda k: Fraction(len(k.indices)), name="count")
    assert "count" in repr(sys_)
    # <tau_2 tau_0>_2 = <tau_1>_2 = 1
    assert sys_(2, (2, 0)) == 1
