from __future__ import annotations

import csv
import io
import itertools
import math
from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .config import get_settings
from .errors import BudgetExceeded, LexError
from .words import Word, format_word


def _normalize_subalphabet(subalphabet: Iterable[int]) -> tuple[int, ...]:
    letters = tuple(sorted(set(subalphabet)))
    if not letters:
        raise LexError("sub-alphabet must not be empty")
    return letters


def bernoulli_weight(subalphabet: Iterable[int], w: Sequence[int]) -> Fraction:
    letters = _normalize_subalphabet(subalphabet)
    allowed = frozenset(letters)
    if any(letter not in allowed for letter in w):
        return Fraction(0)
    return Fraction(1, len(letters) ** len(w))


class BernoulliWeights(Mapping[Word, Fraction]):
    """Lazy cylinder table of the uniform Bernoulli measure at one level."""

    def __init__(self, subalphabet: Iterable[int], n: int) -> None:
        self.letters = _normalize_subalphabet(subalphabet)
        self.n = n

    def __getitem__(self, w: Word) -> Fraction:
        if len(w) != self.n:
            raise KeyError(w)
        return bernoulli_weight(self.letters, w)

    def __iter__(self) -> Iterator[Word]:
        return itertools.product(self.letters, repeat=self.n)

    def __len__(self) -> int:
        return len(self.letters) ** self.n

    def weight_classes(self) -> Counter[Fraction]:
        return Counter({Fraction(1, len(self)): len(self)})


@dataclass(frozen=True, slots=True)
class CylinderDistribution:
    n: int
    weights: Mapping[Word, Fraction]

    def weight_classes(self) -> Counter[Fraction]:
        classes = getattr(self.weights, "weight_classes", None)
        if classes is not None:
            return classes()
        return Counter(weight for weight in self.weights.values() if weight > 0)

    def total(self) -> Fraction:
        return sum((weight * count for weight, count in self.weight_classes().items()), Fraction(0))

    def support_size(self) -> int:
        return sum(count for weight, count in self.weight_classes().items() if weight > 0)

    def weight(self, w: Word) -> Fraction:
        return self.weights.get(w, Fraction(0))

    def validate(self) -> None:
        if self.total() != 1:
            raise LexError(f"weights sum to {self.total()}, not 1")

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["word", "weight_numerator", "weight_denominator"])
        for w in sorted(self.weights):
            weight = self.weights[w]
            if weight > 0:
                writer.writerow([format_word(w), weight.numerator, weight.denominator])
        return buffer.getvalue()


def bernoulli_distribution(subalphabet: Iterable[int], n: int) -> CylinderDistribution:
    return CylinderDistribution(n=n, weights=BernoulliWeights(subalphabet, n))


def bernoulli_table(subalphabet: Iterable[int], n: int, budget: int | None = None) -> CylinderDistribution:
    letters = _normalize_subalphabet(subalphabet)
    limit = budget if budget is not None else get_settings().budget
    if len(letters) ** n > limit:
        raise BudgetExceeded(f"table of {len(letters)}^{n} cylinders exceeds the enumeration budget of {limit}")
    weight = Fraction(1, len(letters) ** n)
    return CylinderDistribution(n=n, weights={w: weight for w in itertools.product(letters, repeat=n)})


def marginal(dist: CylinderDistribution) -> CylinderDistribution:
    """Sum out the last letter."""
    if dist.n < 1:
        raise LexError("level-0 distribution has no marginal")
    summed: dict[Word, Fraction] = {}
    for w, weight in dist.weights.items():
        summed[w[:-1]] = summed.get(w[:-1], Fraction(0)) + weight
    return CylinderDistribution(n=dist.n - 1, weights=summed)


def _log_fraction(value: Fraction) -> float:
    return math.log(value.numerator) - math.log(value.denominator)


def level_entropy(dist: CylinderDistribution) -> float:
    if dist.n < 1:
        return 0.0
    acc = 0.0
    for weight, count in sorted(dist.weight_classes().items()):
        if weight > 0:
            acc += float(weight * count) * _log_fraction(weight)
    return -acc / dist.n


@dataclass(frozen=True, slots=True)
class SupportReport:
    n: int
    support: int
    entropy: float
    exponent: float
    passed: bool


def support_count_check(dist: CylinderDistribution, tolerance: float = 1e-9) -> SupportReport:
    """|support| >= exp(n·H_n), compared in log space with the rounding slack
    on the side that cannot cause a false failure."""
    entropy = level_entropy(dist)
    support = dist.support_size()
    exponent = dist.n * entropy
    passed = exponent <= math.log(support) + tolerance * max(1.0, exponent)
    return SupportReport(n=dist.n, support=support, entropy=entropy, exponent=exponent, passed=passed)


def disjoint_support_check(d1: CylinderDistribution, d2: CylinderDistribution) -> bool:
    if d1.n != d2.n:
        raise LexError(f"level mismatch: {d1.n} != {d2.n}")
    if isinstance(d1.weights, BernoulliWeights) and isinstance(d2.weights, BernoulliWeights):
        if d1.n == 0:
            return False
        return not set(d1.weights.letters) & set(d2.weights.letters)
    first, second = (d1, d2) if len(d1.weights) <= len(d2.weights) else (d2, d1)
    return not any(weight > 0 and second.weight(w) > 0 for w, weight in first.weights.items())


def sample_and_frequencies(subalphabet: Iterable[int], length: int, n: int, seed: int) -> CylinderDistribution:
    """Empirical frequencies of the length-n windows of one seeded i.i.d. uniform word."""
    letters = _normalize_subalphabet(subalphabet)
    if n < 1:
        raise LexError(f"window length must be >= 1, got {n}")
    if length < n:
        raise LexError(f"sample length {length} is shorter than the window {n}")
    a = len(letters)
    rng = np.random.default_rng(seed)
    digits = rng.integers(0, a, size=length, dtype=np.int64)
    windows = length - n + 1
    # window codes past int64 are kept as Python ints
    if a**n > np.iinfo(np.int64).max:
        digits = digits.astype(object)
    codes = np.zeros(windows, dtype=digits.dtype)
    for offset in range(n):
        codes = codes * a + digits[offset:offset + windows]
    values, counts = np.unique(codes, return_counts=True)
    weights: dict[Word, Fraction] = {}
    for code, count in zip(values.tolist(), counts.tolist()):
        w = []
        for _ in range(n):
            code, digit = divmod(code, a)
            w.append(letters[digit])
        weights[tuple(reversed(w))] = Fraction(count, windows)
    return CylinderDistribution(n=n, weights=weights)


def max_deviation(dist: CylinderDistribution, a: int) -> float:
    """Largest |empirical - a^-n| over every cylinder, unseen ones included."""
    expected = Fraction(1, a**dist.n)
    seen = max((abs(weight - expected) for weight in dist.weights.values()), default=Fraction(0))
    if len(dist.weights) < a**dist.n:
        seen = max(seen, expected)
    return float(seen)
