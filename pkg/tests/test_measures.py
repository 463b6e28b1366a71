"""Tests for cylinder distributions and their entropy."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import integers, lists

from lex.errors import BudgetExceeded, LexError
from lex.measures import (
    CylinderDistribution,
    bernoulli_distribution,
    bernoulli_table,
    bernoulli_weight,
    disjoint_support_check,
    level_entropy,
    marginal,
    max_deviation,
    sample_and_frequencies,
    support_count_check,
)


def test_bernoulli_weights():
    assert bernoulli_weight([1, 2], (1, 2, 1)) == Fraction(1, 8)
    assert bernoulli_weight([1, 2], (1, -1)) == 0
    assert bernoulli_weight([1, 2], ()) == 1
    with pytest.raises(LexError):
        bernoulli_weight([], (1,))


@pytest.mark.parametrize("a", [2, 10, 20])
def test_uniform_entropy_is_ln_a(a):
    for n in range(1, 13):
        dist = bernoulli_distribution(range(1, a + 1), n)
        assert dist.total() == 1
        assert dist.support_size() == a**n
        assert level_entropy(dist) == pytest.approx(math.log(a), rel=1e-12)
        report = support_count_check(dist)
        assert report.passed
        assert report.exponent == pytest.approx(math.log(report.support), rel=1e-12)


def test_lazy_table_is_not_materialised():
    weights = bernoulli_distribution(range(1, 21), 12).weights
    assert len(weights) == 20**12
    assert weights[(1,) * 12] == Fraction(1, 20**12)


def test_entropy_examples():
    point = CylinderDistribution(n=1, weights={(1,): Fraction(1)})
    assert level_entropy(point) == 0
    coin = CylinderDistribution(n=1, weights={(0,): Fraction(1, 2), (1,): Fraction(1, 2)})
    assert level_entropy(coin) == pytest.approx(math.log(2))


@given(lists(integers(min_value=0, max_value=20), min_size=16, max_size=16).filter(any))
def test_support_count_inequality(raw):
    import itertools

    total = sum(raw)
    cube = list(itertools.product((0, 1), repeat=4))
    dist = CylinderDistribution(n=4, weights={w: Fraction(x, total) for w, x in zip(cube, raw)})
    dist.validate()
    assert support_count_check(dist).passed


def test_validate_rejects_unnormalised():
    with pytest.raises(LexError):
        CylinderDistribution(n=1, weights={(0,): Fraction(1, 3)}).validate()


def test_disjoint_supports():
    for n in range(1, 13):
        assert disjoint_support_check(bernoulli_distribution([1, 2], n), bernoulli_distribution([-2, -1], n))
    table = bernoulli_table([0, 1], 3)
    assert not disjoint_support_check(table, table)
    assert not disjoint_support_check(bernoulli_distribution([1, 2], 3), bernoulli_distribution([-2, -1, 1, 2], 3))
    with pytest.raises(LexError, match="level mismatch"):
        disjoint_support_check(bernoulli_distribution([1], 2), bernoulli_distribution([1], 3))


def test_marginal():
    for n in range(1, 13):
        assert marginal(bernoulli_table([1, 2], n)).weights == bernoulli_table([1, 2], n - 1).weights
    assert marginal(bernoulli_table([1, 2, 3], 6)).total() == 1
    with pytest.raises(LexError):
        marginal(bernoulli_table([1, 2], 0))


def test_table_budget():
    with pytest.raises(BudgetExceeded):
        bernoulli_table(range(1, 11), 6, budget=1000)


def test_csv_export():
    lines = bernoulli_table([1, 2], 1).to_csv().splitlines()
    assert lines == ["word,weight_numerator,weight_denominator", "1,1,2", "2,1,2"]


def test_sampling_is_seeded():
    first = sample_and_frequencies([1, 2, 3], 5000, 2, seed=11)
    second = sample_and_frequencies([1, 2, 3], 5000, 2, seed=11)
    assert first.weights == second.weights
    assert first.total() == 1
    assert max_deviation(first, 3) < 0.05


def test_sampling_rejects_short_samples():
    with pytest.raises(LexError):
        sample_and_frequencies([1, 2], 3, 4, seed=0)


@pytest.mark.parametrize("seed", range(10))
def test_sampled_pairs_are_near_uniform(seed):
    sampled = sample_and_frequencies(range(1, 11), 10**6, 2, seed)
    assert len(sampled.weights) == 100
    assert max_deviation(sampled, 10) < 0.01


def test_long_windows_decode_to_the_drawn_word():
    letters = list(range(1, 11))
    sampled = sample_and_frequencies(letters, 60, 20, seed=0)
    digits = np.random.default_rng(0).integers(0, 10, size=60, dtype=np.int64).tolist()
    drawn = [tuple(letters[d] for d in digits[i:i + 20]) for i in range(41)]
    assert set(sampled.weights) == set(drawn)
    for w, weight in sampled.weights.items():
        assert weight == Fraction(drawn.count(w), 41)
    assert sampled.total() == 1
