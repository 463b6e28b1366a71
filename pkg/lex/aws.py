"""The zero-gap counterexample: opposite signs must be separated by enough zeros."""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import GlueError, LexError
from .subshift import GapFunction, HigherPowerModel, SubshiftModel, random_member_word
from .utils import ceil_log
from .words import Sign, SignedAlphabet, Word, run_decompose

LOGGER = logging.getLogger(__name__)


def gap_f(n: int) -> int:
    if n < 1:
        raise LexError(f"gap function is defined for n >= 1, got {n}")
    return 2 + ceil_log(3, n)


def gap_allows(run_length: int, zeros: int) -> bool:
    """True when a zero gap of `zeros` after a nonzero block of `run_length` is legal."""
    return zeros >= 2 and 3 ** (zeros - 2) >= run_length


def _max_run_for_gap(zeros: int) -> int:
    return 3 ** (zeros - 2) if zeros >= 2 else 0


class AwsModel(SubshiftModel):
    kind = "aws"
    extension_rule = "pad with zeros on both sides: ...000w000... is a point"

    def __init__(self, N: int) -> None:
        self.alphabet = SignedAlphabet(N=N, includes_zero=True)
        self.N = N

    @property
    def letters(self) -> tuple[int, ...]:
        return self.alphabet.letters

    def params(self) -> dict[str, Any]:
        return {"N": self.N}

    def is_member(self, w: Sequence[int]) -> bool:
        if not w:
            return True
        runs = run_decompose(w).runs
        for index, run in enumerate(runs):
            if run.sign is Sign.ZERO:
                continue
            if index + 1 < len(runs) and runs[index + 1].sign is not Sign.ZERO:
                return False
            if index + 2 < len(runs):
                gap = runs[index + 1].length
                if not gap_allows(run.length, gap):
                    return False
        return True

    def accepts_extension(self, prefix: tuple[int, ...], letter: int) -> bool:
        if letter == 0 or not prefix:
            return True
        last = prefix[-1]
        if last != 0:
            return (last > 0) == (letter > 0)
        zeros = 0
        position = len(prefix) - 1
        while position >= 0 and prefix[position] == 0:
            zeros += 1
            position -= 1
        if position < 0:
            return True
        run = 0
        while position >= 0 and prefix[position] != 0:
            run += 1
            position -= 1
        return gap_allows(run, zeros)

    def count_dp(self, n: int) -> int:
        return aws_count_dp(self.N, n)

    def log_count_dp(self, n: int) -> float:
        return aws_log_count(self.N, n)


def aws_is_member(N: int, w: Sequence[int]) -> bool:
    model = AwsModel(N)
    model.check_word(w)
    return model.is_member(w)


def _matches_family_c(u: Sequence[int]) -> bool:
    if len(u) < 3 or u[-1] == 0 or u[0] == 0:
        return False
    position = len(u) - 2
    zeros = 0
    while position >= 0 and u[position] == 0:
        zeros += 1
        position -= 1
    if zeros == 0:
        return False
    block = u[:position + 1]
    if not block or any(letter == 0 for letter in block):
        return False
    return not gap_allows(len(block), zeros)


def aws_forbidden_scan(N: int, w: Sequence[int]) -> bool:
    """Literal scan of every subword against the forbidden families; True means member.

    Forbidden: opposite signs adjacent, `i 0 j` with opposite signs, and a
    nonzero block of length j followed by 0^m and a nonzero letter with
    m < 2 + log3(j). The last family applies to mixed-sign blocks as well."""
    AwsModel(N).check_word(w)
    n = len(w)
    for i in range(n - 1):
        if w[i] * w[i + 1] < 0:
            return False
    for i in range(n - 2):
        if w[i + 1] == 0 and w[i] * w[i + 2] < 0:
            return False
    for start in range(n):
        for stop in range(start + 3, n + 1):
            if _matches_family_c(w[start:stop]):
                return False
    return True


def aws_count_dp(N: int, n: int) -> int:
    """Exact |L_n| over run compositions.

    ends[i][L] counts prefixes of length i whose last letter closes a nonzero
    run of length L (factor 2·N^L: free sign, free magnitudes); ready[j] counts
    prefixes after which a new run may start at position j (all-zero prefix, or
    a legal gap after the previous run). Trailing zeros are free."""
    if n < 1:
        raise LexError(f"word length must be >= 1, got {n}")
    run_weight = [0] + [2 * N**length for length in range(1, n + 1)]
    ends = [[0] * (n + 1) for _ in range(n + 1)]
    cumulative = [[0] * (n + 1) for _ in range(n + 1)]
    ready = [0] * (n + 1)
    for j in range(n + 1):
        total = 1
        for zeros in range(2, j + 1):
            p = j - zeros
            if p < 1:
                break
            total += cumulative[p][min(_max_run_for_gap(zeros), p)]
        ready[j] = total
        if j == 0:
            continue
        for length in range(1, j + 1):
            ends[j][length] = run_weight[length] * ready[j - length]
        running = 0
        for length in range(1, n + 1):
            if length <= j:
                running += ends[j][length]
            cumulative[j][length] = running
    return 1 + sum(cumulative[p][p] for p in range(1, n + 1))


def aws_log_count(N: int, n: int) -> float:
    """ln |L_n| by the recurrence of aws_count_dp, carried in log space.

    Only totals and the prefix sums at run caps 3^k are kept per position."""
    if n < 1:
        raise LexError(f"word length must be >= 1, got {n}")
    log_weight = math.log(2) + np.arange(n + 1) * math.log(N)
    ready = np.empty(n + 1)
    total = np.full(n + 1, -np.inf)
    capped: list[list[float]] = [[] for _ in range(n + 1)]
    for j in range(n + 1):
        terms = [0.0]
        zeros = 2
        while zeros < j:
            p = j - zeros
            if _max_run_for_gap(zeros) >= p:
                terms.append(float(np.logaddexp.reduce(total[1:p + 1])))
                break
            terms.append(capped[p][zeros - 2])
            zeros += 1
        ready[j] = np.logaddexp.reduce(terms)
        if j == 0:
            continue
        acc = np.logaddexp.accumulate(log_weight[1:j + 1] + ready[j - 1::-1])
        total[j] = acc[-1]
        cap = 1
        while cap < j:
            capped[j].append(float(acc[cap - 1]))
            cap *= 3
    return float(np.logaddexp(0.0, np.logaddexp.reduce(total[1:])))


def glue(N: int, words: Sequence[Sequence[int]], gaps: Sequence[int]) -> Word:
    if len(words) < 2:
        raise GlueError(f"gluing needs at least two words, got {len(words)}")
    if len(gaps) != len(words) - 1:
        raise GlueError(f"expected {len(words) - 1} gaps, got {len(gaps)}")
    model = AwsModel(N)
    for index, w in enumerate(words):
        model.check_word(w)
        if not w or not model.is_member(w):
            raise GlueError(f"word {index} is not a member word")
    for index, (w, gap) in enumerate(zip(words, gaps)):
        required = gap_f(len(w))
        if gap < required:
            raise GlueError(f"gap {index} is {gap}, below the required gap_f({len(w)}) = {required}")
    glued: list[int] = list(words[0])
    for w, gap in zip(words[1:], gaps):
        glued.extend([0] * gap)
        glued.extend(w)
    result = tuple(glued)
    if not model.is_member(result):
        raise GlueError(f"glued word is not a member: {result}")
    return result


# --- higher powers -----------------------------------------------------------


def hp_gap_f(k: int, n: int) -> int:
    """Gap (in blocks) that suffices in the k-th higher-power shift."""
    return -(-gap_f(k * n) // k)


def c_log_gap(C: Fraction, n: int) -> int:
    """max(1, ceil(C·log3 n)) via 3^(s·q) >= n^p for C = p/q."""
    if C <= 0:
        raise LexError(f"C must be positive, got {C}")
    p, q = C.numerator, C.denominator
    target = n**p
    s = 0
    while 3 ** (s * q) < target:
        s += 1
    return max(1, s)


def hp_gap_function(k: int) -> GapFunction:
    return GapFunction(evaluate=lambda n: hp_gap_f(k, n), description=f"ceil((2 + ceil(log3({k}n)))/{k})")


def c_log_gap_function(C: Fraction) -> GapFunction:
    return GapFunction(evaluate=lambda n: c_log_gap(C, n), description=f"max(1, ceil({C} log3 n))")


def aws_gap_function() -> GapFunction:
    return GapFunction(evaluate=gap_f, description="2 + ceil(log3 n)")


def power_for(C: Fraction) -> int:
    if C <= 0:
        raise LexError(f"C must be positive, got {C}")
    return math.ceil(Fraction(8) / C)


@dataclass(slots=True)
class InequalityReport:
    C: Fraction
    k: int
    n_max: int
    violations: list[tuple[int, int, int]] = field(default_factory=list)
    max_lhs: int = 0
    max_rhs: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations


def hp_gap_inequality_check(C: Fraction, n_max: int, max_violations: int = 20) -> InequalityReport:
    """Sweeps every n <= n_max, updating both ceilings incrementally in exact integers."""
    if C <= 0:
        raise LexError(f"C must be positive, got {C}")
    k = power_for(C)
    p, q = C.numerator, C.denominator
    report = InequalityReport(C=C, k=k, n_max=n_max)
    t = 0
    power_t = 1
    s = 0
    power_s = 1
    step = 3**q
    for n in range(1, n_max + 1):
        while power_t < k * n:
            power_t *= 3
            t += 1
        target = n**p
        while power_s < target:
            power_s *= step
            s += 1
        lhs = -(-(2 + t) // k)
        rhs = max(1, s)
        report.max_lhs = max(report.max_lhs, lhs)
        report.max_rhs = max(report.max_rhs, rhs)
        if lhs > rhs:
            report.violations.append((n, lhs, rhs))
            if len(report.violations) >= max_violations:
                break
    LOGGER.info("Higher-power gap inequality C=%s k=%d n_max=%d violations=%d", C, k, n_max, len(report.violations))
    return report


def glue_blocks(N: int, k: int, words: Sequence[Sequence[Sequence[int]]], gaps: Sequence[int]) -> tuple[Word, ...]:
    """Glue block words of the k-th higher power with whole zero blocks."""
    if len(words) < 2:
        raise GlueError(f"gluing needs at least two words, got {len(words)}")
    if len(gaps) != len(words) - 1:
        raise GlueError(f"expected {len(words) - 1} gaps, got {len(gaps)}")
    model = HigherPowerModel(AwsModel(N), k)
    for index, w in enumerate(words):
        model.check_word(w)
        if not w or not model.is_member(w):
            raise GlueError(f"block word {index} is not a member word")
    for index, (w, gap) in enumerate(zip(words, gaps)):
        required = hp_gap_f(k, len(w))
        if gap < required:
            raise GlueError(f"gap {index} is {gap} blocks, below the required {required}")
    zero_block = (0,) * k
    glued: list[Word] = [tuple(block) for block in words[0]]
    for w, gap in zip(words[1:], gaps):
        glued.extend([zero_block] * gap)
        glued.extend(tuple(block) for block in w)
    result = tuple(glued)
    if not model.is_member(result):
        raise GlueError("glued block word is not a member")
    return result


# --- seeded property runs ----------------------------------------------------


@dataclass(slots=True)
class GlueRunReport:
    trials: int
    seed: int
    failures: list[str] = field(default_factory=list)
    monotone_failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.monotone_failures


def glue_property_run(N: int, trials: int, seed: int, max_words: int = 4, max_length: int = 15) -> GlueRunReport:
    rng = random.Random(seed)
    model = AwsModel(N)
    report = GlueRunReport(trials=trials, seed=seed)
    for trial in range(trials):
        k = rng.randint(2, max_words)
        words = [random_member_word(model, rng.randint(1, max_length), rng) for _ in range(k)]
        gaps = [gap_f(len(w)) for w in words[:-1]]
        try:
            glue(N, words, gaps)
        except GlueError as exc:
            report.failures.append(f"trial {trial}: {exc}")
            continue
        for index in range(len(gaps)):
            widened = list(gaps)
            widened[index] += 1
            try:
                glue(N, words, widened)
            except GlueError as exc:
                report.monotone_failures.append(f"trial {trial} gap {index}: {exc}")
    return report


def glue_blocks_property_run(N: int, k: int, trials: int, seed: int, max_words: int = 3, max_blocks: int = 4) -> GlueRunReport:
    rng = random.Random(seed)
    model = HigherPowerModel(AwsModel(N), k)
    report = GlueRunReport(trials=trials, seed=seed)
    for trial in range(trials):
        count = rng.randint(2, max_words)
        words = [random_member_word(model, rng.randint(1, max_blocks), rng) for _ in range(count)]
        gaps = [hp_gap_f(k, len(w)) for w in words[:-1]]
        try:
            glue_blocks(N, k, words, gaps)
        except GlueError as exc:
            report.failures.append(f"trial {trial}: {exc}")
    return report
