"""Tests for the gap-function subshift over {-N..N}."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis.strategies import integers, lists

from lex.aws import (
    AwsModel,
    aws_count_dp,
    aws_log_count,
    aws_forbidden_scan,
    aws_is_member,
    c_log_gap,
    gap_allows,
    gap_f,
    glue,
    glue_blocks,
    glue_blocks_property_run,
    glue_property_run,
    hp_gap_f,
    hp_gap_inequality_check,
    power_for,
)
from lex.errors import GlueError, LexError, WordError
from lex.subshift import HigherPowerModel, count_language, random_member_word
from lex.words import parse_word


def test_membership_examples():
    assert not aws_is_member(2, parse_word("1 1 0 0 1"))
    assert aws_is_member(2, parse_word("1 1 0 0 0 1"))
    assert not aws_is_member(2, parse_word("1 0 -1"))
    assert not aws_is_member(2, parse_word("1 -1"))
    assert aws_is_member(2, parse_word("1 0 0 1"))
    assert aws_is_member(1, parse_word("1 1 0"))
    with pytest.raises(WordError):
        aws_is_member(1, (2,))


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 3), (3, 3), (4, 4), (9, 4), (10, 5), (27, 5), (28, 6)])
def test_gap_table(n, expected):
    assert gap_f(n) == expected
    assert gap_allows(n, expected)
    assert not gap_allows(n, expected - 1)


@given(lists(integers(min_value=-2, max_value=2), max_size=10))
@settings(max_examples=300)
def test_run_rule_matches_literal_scan(w):
    assert aws_is_member(2, w) == aws_forbidden_scan(2, w)


@pytest.mark.parametrize("N", [1, 2])
def test_dp_matches_brute(N):
    for n in range(1, 9):
        assert aws_count_dp(N, n) == count_language(AwsModel(N), n, "brute")


def test_dp_small_values():
    assert aws_count_dp(1, 2) == 7
    assert aws_count_dp(1, 3) == 13
    for n in range(1, 30):
        assert aws_count_dp(3, n) >= 2 * 3**n
    with pytest.raises(LexError):
        aws_count_dp(1, 0)


def test_glue_examples():
    assert glue(2, [(1,), (-2,)], [2]) == (1, 0, 0, -2)
    assert glue(1, [(1, 1), (1,)], [3]) == (1, 1, 0, 0, 0, 1)


def test_glue_rejects_short_gap():
    with pytest.raises(GlueError, match=r"gap_f\(2\) = 3"):
        glue(1, [(1, 1), (1,)], [2])


def test_glue_rejects_bad_input():
    with pytest.raises(GlueError, match="not a member"):
        glue(2, [(1, -1), (1,)], [5])
    with pytest.raises(GlueError, match="expected 1 gaps"):
        glue(2, [(1,), (1,)], [])
    with pytest.raises(GlueError):
        glue(2, [(1,)], [])


@given(integers(min_value=0, max_value=2**32))
@settings(max_examples=50)
def test_glued_words_are_members(seed):
    rng = random.Random(seed)
    model = AwsModel(2)
    words = [random_member_word(model, rng.randint(1, 12), rng) for _ in range(rng.randint(2, 4))]
    gaps = [gap_f(len(w)) + rng.randint(0, 2) for w in words[:-1]]
    glued = glue(2, words, gaps)
    assert aws_is_member(2, glued)
    assert len(glued) == sum(map(len, words)) + sum(gaps)


def test_glue_property_run():
    report = glue_property_run(2, 200, seed=7)
    assert report.passed
    assert report.trials == 200


def test_higher_power_gap():
    assert hp_gap_f(1, 10) == gap_f(10)
    assert hp_gap_f(4, 1) == 1
    assert hp_gap_f(2, 5) == 3


def test_glue_blocks():
    blocks = glue_blocks(1, 2, [((1, 1),), ((1, 0),)], [hp_gap_f(2, 1)])
    assert HigherPowerModel(AwsModel(1), 2).is_member(blocks)
    assert blocks[1] == (0, 0)
    report = glue_blocks_property_run(2, 2, 30, seed=3)
    assert report.passed


def test_c_log_gap():
    assert c_log_gap(Fraction(1), 1) == 1
    assert c_log_gap(Fraction(1), 3) == 1
    assert c_log_gap(Fraction(1), 4) == 2
    assert c_log_gap(Fraction(2), 3) == 2
    assert c_log_gap(Fraction(1, 2), 9) == 1
    assert c_log_gap(Fraction(1, 2), 10) == 2
    with pytest.raises(LexError):
        c_log_gap(Fraction(0), 5)


@pytest.mark.parametrize("C, k", [(Fraction(1, 4), 32), (Fraction(1, 2), 16), (Fraction(1), 8), (Fraction(2), 4)])
def test_hp_inequality(C, k):
    assert power_for(C) == k
    report = hp_gap_inequality_check(C, 20_000)
    assert report.k == k
    assert report.passed
    assert report.max_lhs <= report.max_rhs


def test_hp_inequality_rejects_nonpositive():
    with pytest.raises(LexError):
        hp_gap_inequality_check(Fraction(-1), 10)


@pytest.mark.parametrize("N", [1, 2, 10])
def test_log_space_count_tracks_exact_count(N):
    for n in range(1, 61):
        assert aws_log_count(N, n) == pytest.approx(math.log(aws_count_dp(N, n)), rel=1e-12)
    assert AwsModel(N).log_count_dp(5) == pytest.approx(math.log(aws_count_dp(N, 5)), rel=1e-12)


def test_log_space_count_runs_past_float_range():
    value = aws_log_count(10, 400)
    assert 400 * math.log(10) < value < 400 * math.log(21)
