"""Tests for the sign-run subshift, its counts and its repair procedure."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers

from lex.aspec import (
    AspecModel,
    alpha_interval,
    aspec_is_member,
    count_formula,
    count_formula_literal,
    entropy_bound_check,
    repair_concatenation,
    repair_property_run,
)
from lex.errors import LexError, RepairError, WordError
from lex.subshift import count_language, random_member_word
from lex.words import Sign, parse_word


@pytest.fixture
def small():
    return AspecModel(2, 2)


def test_model_parameters():
    with pytest.raises(LexError):
        AspecModel(1, 2)
    with pytest.raises(LexError):
        AspecModel(2, 1)


def test_membership_examples(small):
    assert aspec_is_member(small, parse_word("1 -1 1"))
    assert not aspec_is_member(small, parse_word("1 -2 1"))
    assert aspec_is_member(small, (2, 2, 1, 2))
    assert aspec_is_member(small, (-2, -1, -2))
    with pytest.raises(WordError):
        aspec_is_member(small, (1, 0, 1))


def test_families(small):
    assert small.M(1) == 1
    assert small.positive_family(1).contains((1,))
    assert small.family(Sign.NEGATIVE, 1).contains((-1,))
    assert not small.family(Sign.NEGATIVE, 1).contains((-2,))
    assert small.positive_family(2).kind == "V"
    assert small.positive_family(3).kind == "U"
    assert small.family(Sign.NEGATIVE, 5).cardinality == small.M(5)
    assert small.family_csv(3).splitlines()[0] == "n,M_n,kind"


def test_small_counts(small):
    assert small.count_dp(1) == 4
    assert small.count_dp(3) == 56
    assert count_formula(small, 3) == 56
    assert count_formula_literal(small, 3) == 56


@pytest.mark.parametrize("ell", [2, 3])
def test_three_way_oracle(ell):
    model = AspecModel(2, ell)
    for n in range(1, 9):
        brute = count_language(model, n, "brute")
        assert brute == model.count_dp(n) == count_formula(model, n) == count_formula_literal(model, n)
        assert brute >= 2 * 2**n


def test_dp_matches_formula_for_longer_words():
    model = AspecModel(3, 4)
    counts = model.counts_upto(60)
    for n in (1, 2, 10, 30, 60):
        assert counts[n] == count_formula(model, n)


def test_literal_sum_range(small):
    with pytest.raises(LexError):
        count_formula_literal(small, 21)


def test_repair_examples(small):
    result = repair_concatenation(small, [(2,), (-2,), (2,)])
    assert result.glued == (2, -1, 2)
    assert result.distances == [0, 1, 0]
    assert result.transcript() == [{"word": 1, "position": 0, "before": -2, "after": -1}]

    single = repair_concatenation(small, [(1, 2, -1, -1)])
    assert single.glued == (1, 2, -1, -1)
    assert single.changes == []


def test_repair_edges(small):
    result = repair_concatenation(small, [(2, 2)], repair_edges=True)
    assert result.glued == (1, 1)
    assert result.distances == [2]


def test_repair_rejects_non_members(small):
    with pytest.raises(RepairError, match="not a member"):
        repair_concatenation(small, [(1, -2, 1)])
    with pytest.raises(RepairError):
        repair_concatenation(small, [])


@given(integers(min_value=0, max_value=2**32), integers(min_value=1, max_value=5))
@settings(max_examples=100, deadline=None)
def test_repair_distance_at_most_four(seed, k):
    model = AspecModel(2, 3)
    rng = random.Random(seed)
    words = [random_member_word(model, rng.randint(1, 20), rng) for _ in range(k)]
    for repair_edges in (False, True):
        result = repair_concatenation(model, words, repair_edges=repair_edges)
        assert model.is_member(result.glued)
        assert all(d <= 4 for d in result.distances)
        for before, after in zip(words, result.repaired):
            assert len(before) == len(after)
            assert all(Sign.of(x) is Sign.of(y) for x, y in zip(before, after))


def test_repair_property_run():
    report = repair_property_run(AspecModel(2, 3), 200, seed=7)
    assert report.passed
    assert report.max_distance <= 4
    assert sum(report.histogram.values()) > 0


def test_alpha_paper_parameters():
    alpha = alpha_interval(AspecModel(10, 32))
    assert alpha.lower < alpha.upper <= Fraction(91, 100)
    assert alpha.lemma_bound == Fraction(91, 100)
    assert alpha.lower <= alpha.lemma_bound


def test_alpha_cutoff_must_exceed_ell():
    with pytest.raises(LexError):
        alpha_interval(AspecModel(10, 32), tail_cutoff=32)


def test_entropy_bound_paper_parameters():
    report = entropy_bound_check(AspecModel(10, 32), 60)
    assert report.passed
    assert len(report.rows) == 60
    assert all(row.log_rate <= row.log_bound + 1e-12 for row in report.rows)


def test_entropy_bound_inapplicable(small):
    with pytest.raises(LexError, match="entropy bound inapplicable"):
        entropy_bound_check(small, 10)


@pytest.mark.parametrize("N, ell", [(2, 2), (2, 3), (3, 4), (10, 32)])
def test_log_space_count_tracks_exact_count(N, ell):
    model = AspecModel(N, ell)
    for n in range(1, 61):
        assert model.log_M(n) == pytest.approx(math.log(model.M(n)), rel=1e-12, abs=1e-12)
        assert model.log_count_dp(n) == pytest.approx(math.log(model.count_dp(n)), rel=1e-12)
