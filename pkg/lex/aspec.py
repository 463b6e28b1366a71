"""The sign-run counterexample: bracketed runs must lie in their run family."""
from __future__ import annotations

import csv
import io
import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .codes import Code, build_U, build_V, log_t_min_class, repair_spanning
from .errors import LexError, RepairError
from .state import code_store
from .subshift import SubshiftModel, random_member_word
from .words import Sign, SignedAlphabet, Word, hamming, negate, run_decompose

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class RunFamily:
    """P_n (sign +1) or N_n (sign -1), backed by a code over {1,...,N}."""

    sign: Sign
    n: int
    kind: str
    cardinality: int
    code: Code | None = None

    def _to_positive(self, run: Sequence[int]) -> Word:
        return tuple(run) if self.sign is Sign.POSITIVE else negate(run)

    def _from_positive(self, run: Word) -> Word:
        return run if self.sign is Sign.POSITIVE else negate(run)

    def contains(self, run: Sequence[int]) -> bool:
        if len(run) != self.n:
            return False
        positive = self._to_positive(run)
        if self.code is None:
            return positive == (1,)
        return self.code.contains(positive)

    def repair(self, run: Sequence[int]) -> Word:
        if self.contains(run):
            return tuple(run)
        if self.code is None:
            return self._from_positive((1,))
        return self._from_positive(repair_spanning(self.code, self._to_positive(run)))


class AspecModel(SubshiftModel):
    kind = "aspec"
    extension_rule = "continue the last run with its own sign: transient points carry no run constraint"

    def __init__(self, N: int, ell: int) -> None:
        if N < 2:
            raise LexError(f"run-family shift needs N >= 2, got {N}")
        if ell < 2:
            raise LexError(f"run-family shift needs ell >= 2, got {ell}")
        self.N = N
        self.ell = ell
        self.alphabet = SignedAlphabet(N=N, includes_zero=False)

    @property
    def letters(self) -> tuple[int, ...]:
        return self.alphabet.letters

    def params(self) -> dict[str, Any]:
        return {"N": self.N, "ell": self.ell}

    def positive_family(self, n: int) -> RunFamily:
        if n < 1:
            raise LexError(f"run length must be >= 1, got {n}")

        def _build() -> RunFamily:
            positives = self.alphabet.positives
            if n == 1:
                return RunFamily(sign=Sign.POSITIVE, n=1, kind="anchor", cardinality=1)
            code = build_V(positives, n) if n <= self.ell else build_U(positives, n)
            return RunFamily(sign=Sign.POSITIVE, n=n, kind=code.family.value, cardinality=code.cardinality, code=code)

        return code_store.get(("aspec-family", self.N, self.ell, n), _build)

    def family(self, sign: Sign, n: int) -> RunFamily:
        positive = self.positive_family(n)
        if sign is Sign.POSITIVE:
            return positive
        if sign is Sign.NEGATIVE:
            return RunFamily(sign=Sign.NEGATIVE, n=n, kind=positive.kind, cardinality=positive.cardinality, code=positive.code)
        raise LexError("the run-family shift has no zero runs")

    def M(self, n: int) -> int:
        return self.positive_family(n).cardinality

    def is_member(self, w: Sequence[int]) -> bool:
        if not w:
            return True
        runs = run_decompose(w).runs
        for run in runs[1:-1]:
            if not self.family(run.sign, run.length).contains(w[run.start:run.stop]):
                return False
        return True

    def accepts_extension(self, prefix: tuple[int, ...], letter: int) -> bool:
        if not prefix or (prefix[-1] > 0) == (letter > 0):
            return True
        start = len(prefix) - 1
        while start > 0 and (prefix[start - 1] > 0) == (prefix[-1] > 0):
            start -= 1
        if start == 0:
            return True
        run = prefix[start:]
        return self.family(Sign.of(run[0]), len(run)).contains(run)

    def counts_upto(self, n_max: int) -> list[int]:
        """Run-boundary transfer: closed[i] weighs prefixes of length i that end
        a run, the first run free (N^len) and later runs from their family (M_len)."""
        N = self.N
        M = [0] + [self.M(length) for length in range(1, n_max + 1)]
        closed = [0] * (n_max + 1)
        for i in range(1, n_max + 1):
            closed[i] = N**i + sum(closed[i - length] * M[length] for length in range(1, i))
        counts = [0] * (n_max + 1)
        for n in range(1, n_max + 1):
            counts[n] = 2 * (N**n + sum(closed[p] * N ** (n - p) for p in range(1, n)))
        return counts

    def count_dp(self, n: int) -> int:
        return self.counts_upto(n)[n]

    def log_M(self, n: int) -> float:
        if n == 1:
            return 0.0
        if n <= self.ell:
            return (n - 2) * math.log(self.N)
        half = n // 2
        return log_t_min_class(self.N, half) + log_t_min_class(self.N, n - half)

    def log_count_dp(self, n: int) -> float:
        """counts_upto in log space, for lengths past the exact budget."""
        if n < 1:
            raise LexError(f"word length must be >= 1, got {n}")
        log_N = math.log(self.N)
        log_M = np.array([-np.inf] + [self.log_M(length) for length in range(1, n)])
        closed = np.full(n, -np.inf)
        for i in range(1, n):
            closed[i] = i * log_N
            if i > 1:
                closed[i] = np.logaddexp(closed[i], np.logaddexp.reduce(closed[i - 1:0:-1] + log_M[1:i]))
        if n == 1:
            return math.log(2) + log_N
        tail = closed[1:n] + (n - np.arange(1, n)) * log_N
        return float(math.log(2) + np.logaddexp(n * log_N, np.logaddexp.reduce(tail)))

    def count_formula(self, n: int) -> int:
        return count_formula(self, n)

    def family_table(self, n_max: int) -> list[tuple[int, int, str]]:
        return [(n, self.M(n), self.positive_family(n).kind) for n in range(1, n_max + 1)]

    def family_csv(self, n_max: int) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "M_n", "kind"])
        for row in self.family_table(n_max):
            writer.writerow(row)
        return buffer.getvalue()


def aspec_is_member(model: AspecModel, w: Sequence[int]) -> bool:
    model.check_word(w)
    return model.is_member(w)


def count_formula(model: AspecModel, n: int) -> int:
    """Count by number of runs: one run, two runs, and k >= 3 runs whose
    interior lengths sum to t, convolved over t rather than enumerated."""
    if n < 1:
        raise LexError(f"word length must be >= 1, got {n}")
    N = model.N
    interior = [1] + [0] * n
    for t in range(1, n + 1):
        interior[t] = sum(model.M(length) * interior[t - length] for length in range(1, t + 1))
    total = 2 * N**n + 2 * (n - 1) * N**n
    for t in range(1, n - 1):
        total += interior[t] * 2 * (n - t - 1) * N ** (n - t)
    return total


def count_formula_literal(model: AspecModel, n: int) -> int:
    """The same sum over every composition of n, term by term (small n only)."""
    if not 1 <= n <= 20:
        raise LexError(f"literal composition sum is limited to 1 <= n <= 20, got {n}")
    N = model.N
    total = 0
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts: list[int] = []
        length = 1
        for cut in cuts:
            if cut:
                parts.append(length)
                length = 1
            else:
                length += 1
        parts.append(length)
        if len(parts) == 1:
            total += 2 * N**n
            continue
        term = 2 * N ** parts[0] * N ** parts[-1]
        for part in parts[1:-1]:
            term *= model.M(part)
        total += term
    return total


# --- almost specification: repair ------------------------------------------


@dataclass(frozen=True, slots=True)
class RepairChange:
    word_index: int
    position: int
    before: int
    after: int


@dataclass(slots=True)
class RepairResult:
    repaired: list[Word]
    glued: Word
    changes: list[RepairChange]
    distances: list[int]

    def transcript(self) -> list[dict[str, int]]:
        return [
            {"word": c.word_index, "position": c.position, "before": c.before, "after": c.after}
            for c in self.changes
        ]


def repair_concatenation(model: AspecModel, words: Sequence[Sequence[int]], repair_edges: bool = False) -> RepairResult:
    """Concatenate member words, repairing maximal runs into their families.

    Runs interior to one word are already family members and stay fixed.
    With repair_edges the outermost runs of the whole concatenation are
    repaired as well, although membership does not require it."""
    if not words:
        raise RepairError("nothing to concatenate")
    for index, w in enumerate(words):
        model.check_word(w)
        if not w or not model.is_member(w):
            raise RepairError(f"word {index} is not a member word")
    raw: list[int] = [letter for w in words for letter in w]
    runs = run_decompose(raw).runs
    fixed = list(raw)
    for index, run in enumerate(runs):
        if not repair_edges and (index == 0 or index == len(runs) - 1):
            continue
        segment = raw[run.start:run.stop]
        fixed[run.start:run.stop] = model.family(run.sign, run.length).repair(segment)
    glued = tuple(fixed)

    repaired: list[Word] = []
    changes: list[RepairChange] = []
    distances: list[int] = []
    offset = 0
    for index, w in enumerate(words):
        new = glued[offset:offset + len(w)]
        repaired.append(new)
        for position, (before, after) in enumerate(zip(w, new)):
            if before != after:
                changes.append(RepairChange(index, position, before, after))
        distances.append(hamming(w, new))
        offset += len(w)

    if not model.is_member(glued):
        raise RepairError(f"repaired concatenation is not a member: {glued}")
    if any(distance > 4 for distance in distances):
        raise RepairError(f"a word needed more than 4 changes: {distances}")
    return RepairResult(repaired=repaired, glued=glued, changes=changes, distances=distances)


@dataclass(slots=True)
class RepairRunReport:
    trials: int
    seed: int
    repair_edges: bool
    failures: list[str] = field(default_factory=list)
    sign_failures: list[str] = field(default_factory=list)
    max_distance: int = 0
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.sign_failures and self.max_distance <= 4


def repair_property_run(
    model: AspecModel,
    trials: int,
    seed: int,
    max_words: int = 5,
    max_length: int = 20,
    repair_edges: bool = False,
) -> RepairRunReport:
    rng = random.Random(seed)
    report = RepairRunReport(trials=trials, seed=seed, repair_edges=repair_edges)
    for trial in range(trials):
        k = rng.randint(1, max_words)
        words = [random_member_word(model, rng.randint(1, max_length), rng) for _ in range(k)]
        try:
            result = repair_concatenation(model, words, repair_edges=repair_edges)
        except RepairError as exc:
            report.failures.append(f"trial {trial}: {exc}")
            continue
        for before, after in zip(words, result.repaired):
            if any(Sign.of(x) is not Sign.of(y) for x, y in zip(before, after)):
                report.sign_failures.append(f"trial {trial}: sign changed in {before}")
        for distance in result.distances:
            report.histogram[distance] = report.histogram.get(distance, 0) + 1
            report.max_distance = max(report.max_distance, distance)
    LOGGER.info("Repair run seed=%d trials=%d max_distance=%d", seed, trials, report.max_distance)
    return report


# --- alpha and the entropy bound --------------------------------------------


@dataclass(frozen=True, slots=True)
class AlphaInterval:
    lower: Fraction
    upper: Fraction
    cutoff: int
    lemma_bound: Fraction


def default_cutoff(model: AspecModel) -> int:
    return max(64, 2 * model.ell)


def alpha_interval(model: AspecModel, tail_cutoff: int | None = None) -> AlphaInterval:
    """Exact partial sum of M_t/N^t up to the cutoff, plus the tail bound
    sum_{t > cutoff} 16/t^2 <= 16/cutoff."""
    cutoff = tail_cutoff if tail_cutoff is not None else default_cutoff(model)
    if cutoff <= model.ell:
        raise LexError(f"tail cutoff must exceed ell={model.ell}, got {cutoff}")
    N = model.N
    lower = sum((Fraction(model.M(t), N**t) for t in range(1, cutoff + 1)), Fraction(0))
    upper = lower + Fraction(16, cutoff)
    lemma_bound = Fraction(1, N) + Fraction(model.ell - 1, N * N) + Fraction(16, model.ell)
    return AlphaInterval(lower=lower, upper=upper, cutoff=cutoff, lemma_bound=lemma_bound)


@dataclass(frozen=True, slots=True)
class BoundRow:
    n: int
    count: int
    passed: bool
    margin: float
    log_rate: float
    log_bound: float


@dataclass(slots=True)
class EntropyBoundReport:
    N: int
    ell: int
    alpha: AlphaInterval
    rows: list[BoundRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "count", "passed", "margin", "log_rate", "log_bound"])
        for row in self.rows:
            writer.writerow([row.n, str(row.count), row.passed, f"{row.margin:.12f}", f"{row.log_rate:.12f}", f"{row.log_bound:.12f}"])
        return buffer.getvalue()


def entropy_bound_check(model: AspecModel, n_max: int, tail_cutoff: int | None = None) -> EntropyBoundReport:
    """|L_n| <= (2n/(1 - alpha_upper))·N^n for every n <= n_max, in exact arithmetic."""
    alpha = alpha_interval(model, tail_cutoff)
    if alpha.upper >= 1:
        raise LexError(f"entropy bound inapplicable: alpha upper bound {float(alpha.upper):.6f} is not below 1")
    report = EntropyBoundReport(N=model.N, ell=model.ell, alpha=alpha)
    N = model.N
    num, den = alpha.upper.numerator, alpha.upper.denominator
    counts = model.counts_upto(n_max)
    for n in range(1, n_max + 1):
        count = counts[n]
        bound_numerator = 2 * n * N**n * den
        scaled = count * (den - num)
        log_factor = math.log(2 * n) - math.log(1 - float(alpha.upper))
        report.rows.append(
            BoundRow(
                n=n,
                count=count,
                passed=scaled <= bound_numerator,
                margin=float(Fraction(scaled, bound_numerator)),
                log_rate=math.log(count) / n,
                log_bound=math.log(N) + log_factor / n,
            )
        )
    return report
