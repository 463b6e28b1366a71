"""Subshifts presented as factorial membership predicates over finite words."""
from __future__ import annotations

import csv
import io
import logging
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterator, Sequence

from .config import get_settings
from .errors import BudgetExceeded, LexError, UnsupportedMethod, WordError
from .words import check_letters

LOGGER = logging.getLogger(__name__)

METHODS = ("brute", "dp", "formula")


class SubshiftModel:
    """Base class: subclasses supply `letters` and `is_member`."""

    kind: str = "abstract"
    extension_rule: str = ""

    @property
    def letters(self) -> tuple[Any, ...]:
        raise NotImplementedError

    def params(self) -> dict[str, Any]:
        return {}

    def check_word(self, w: Sequence[Any]) -> None:
        check_letters(w, self.letters, self.kind)

    def is_member(self, w: Sequence[Any]) -> bool:
        raise NotImplementedError

    def accepts_extension(self, prefix: tuple[Any, ...], letter: Any) -> bool:
        """Membership of prefix + letter, given that prefix is a member."""
        return self.is_member(prefix + (letter,))

    def count_dp(self, n: int) -> int:
        raise UnsupportedMethod(f"model {self.kind} has no run-structure recurrence")

    def count_formula(self, n: int) -> int:
        raise UnsupportedMethod(f"model {self.kind} has no closed count formula")

    def log_count_dp(self, n: int) -> float:
        raise UnsupportedMethod(f"model {self.kind} has no log-space recurrence")

    def describe(self) -> str:
        params = ", ".join(f"{key}={value}" for key, value in self.params().items())
        return f"{self.kind}({params})"


class FullShift(SubshiftModel):
    kind = "full"
    extension_rule = "every word is a member; any continuation is allowed"

    def __init__(self, letters: Sequence[int]) -> None:
        if not letters:
            raise LexError("full shift needs a nonempty alphabet")
        self._letters = tuple(sorted(set(letters)))

    @property
    def letters(self) -> tuple[int, ...]:
        return self._letters

    def params(self) -> dict[str, Any]:
        return {"a": len(self._letters)}

    def is_member(self, w: Sequence[int]) -> bool:
        return True

    def accepts_extension(self, prefix: tuple[int, ...], letter: int) -> bool:
        return True

    def count_dp(self, n: int) -> int:
        return len(self._letters) ** n

    def log_count_dp(self, n: int) -> float:
        return n * math.log(len(self._letters))


class HigherPowerModel(SubshiftModel):
    """The k-th higher-power shift: letters are member words of length k."""

    kind = "higher_power"

    def __init__(self, base: SubshiftModel, k: int) -> None:
        if k < 1:
            raise LexError(f"higher power needs k >= 1, got {k}")
        self.base = base
        self.k = k
        self._letters: tuple[tuple[Any, ...], ...] | None = None

    @property
    def extension_rule(self) -> str:  # type: ignore[override]
        return f"block concatenation extends as in {self.base.describe()}"

    @property
    def letters(self) -> tuple[tuple[Any, ...], ...]:
        if self._letters is None:
            self._letters = enumerate_language(self.base, self.k)
        return self._letters

    def params(self) -> dict[str, Any]:
        return {"base": self.base.describe(), "k": self.k}

    def check_word(self, w: Sequence[Any]) -> None:
        for position, block in enumerate(w):
            if len(block) != self.k:
                raise WordError(f"block {position} has length {len(block)}, expected {self.k}")
            self.base.check_word(block)
            if not self.base.is_member(block):
                raise WordError(f"block {position} is not in L_{self.k} of the base shift")

    def flatten(self, w: Sequence[Sequence[Any]]) -> tuple[Any, ...]:
        return tuple(letter for block in w for letter in block)

    def is_member(self, w: Sequence[Sequence[Any]]) -> bool:
        return self.base.is_member(self.flatten(w))

    def accepts_extension(self, prefix: tuple[Any, ...], letter: Any) -> bool:
        flat = self.flatten(prefix)
        for symbol in letter:
            if not self.base.accepts_extension(flat, symbol):
                return False
            flat = flat + (symbol,)
        return True

    def count_dp(self, n: int) -> int:
        return self.base.count_dp(self.k * n)

    def log_count_dp(self, n: int) -> float:
        return self.base.log_count_dp(self.k * n)


def higher_power(model: SubshiftModel, k: int) -> SubshiftModel:
    if k == 1:
        return model
    return HigherPowerModel(model, k)


def is_member(model: SubshiftModel, w: Sequence[Any]) -> bool:
    model.check_word(w)
    return model.is_member(w)


def _resolve_budget(budget: int | None) -> int:
    return budget if budget is not None else get_settings().budget


def iter_language(model: SubshiftModel, n: int, budget: int | None = None) -> Iterator[tuple[Any, ...]]:
    """Depth-first prefix extension in lexicographic order; pruning is sound
    because member languages are factorial."""
    if n < 0:
        raise LexError(f"word length must be >= 0, got {n}")
    limit = _resolve_budget(budget)
    letters = tuple(sorted(model.letters))
    if n == 0:
        yield ()
        return
    spent = 0
    stack: list[tuple[tuple[Any, ...], int]] = [((), 0)]
    while stack:
        prefix, next_index = stack.pop()
        if next_index >= len(letters):
            continue
        stack.append((prefix, next_index + 1))
        letter = letters[next_index]
        spent += 1
        if spent > limit:
            raise BudgetExceeded(f"enumeration budget of {limit} candidate extensions exceeded")
        if not model.accepts_extension(prefix, letter):
            continue
        word = prefix + (letter,)
        if len(word) == n:
            yield word
        else:
            stack.append((word, 0))


def enumerate_language(model: SubshiftModel, n: int, budget: int | None = None) -> tuple[tuple[Any, ...], ...]:
    started = time.perf_counter()
    words = tuple(iter_language(model, n, budget))
    LOGGER.debug("Enumerated %d words of length %d for %s in %.2fs", len(words), n, model.describe(), time.perf_counter() - started)
    return words


def count_language(model: SubshiftModel, n: int, method: str = "dp", budget: int | None = None) -> int:
    if n < 1:
        raise LexError(f"word length must be >= 1, got {n}")
    if method == "brute":
        return sum(1 for _ in iter_language(model, n, budget))
    if method in ("dp", "formula"):
        settings = get_settings()
        if n > settings.max_n:
            raise BudgetExceeded(f"exact count budget LEX_MAX_N={settings.max_n} is below n={n}")
        if method == "dp":
            return model.count_dp(n)
        return model.count_formula(n)
    raise UnsupportedMethod(f"unknown counting method {method!r}")


def log_count(model: SubshiftModel, n: int) -> float:
    """ln |L_n|: exact up to LEX_MAX_N, a float log-space recurrence beyond it."""
    if n < 1:
        raise LexError(f"word length must be >= 1, got {n}")
    if n <= get_settings().max_n:
        return math.log(model.count_dp(n))
    LOGGER.debug("n=%d is past LEX_MAX_N; counting %s in log space", n, model.describe())
    return model.log_count_dp(n)


def random_member_word(model: SubshiftModel, length: int, rng: random.Random) -> tuple[Any, ...]:
    """Uniform random walk over the letters that keep the prefix a member."""
    letters = tuple(sorted(model.letters))
    word: tuple[Any, ...] = ()
    for _ in range(length):
        allowed = [letter for letter in letters if model.accepts_extension(word, letter)]
        if not allowed:
            raise LexError(f"{model.describe()} has a dead end after {word}")
        word = word + (rng.choice(allowed),)
    return word


@dataclass(frozen=True, slots=True)
class CountEntry:
    n: int
    count: int
    method: str

    @property
    def log_rate(self) -> float:
        return math.log(self.count) / self.n


@dataclass(slots=True)
class CountTable:
    model: str
    entries: list[CountEntry] = field(default_factory=list)

    def add(self, n: int, count: int, method: str) -> CountEntry:
        if method not in METHODS:
            raise UnsupportedMethod(f"unknown counting method {method!r}")
        entry = CountEntry(n=n, count=count, method=method)
        self.entries.append(entry)
        return entry

    def counts(self, n: int) -> dict[str, int]:
        return {entry.method: entry.count for entry in self.entries if entry.n == n}

    def disagreements(self) -> list[int]:
        return sorted({entry.n for entry in self.entries if len(set(self.counts(entry.n).values())) > 1})

    def lengths(self) -> list[int]:
        return sorted({entry.n for entry in self.entries})

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "count", "method", "log_rate"])
        for entry in sorted(self.entries, key=lambda e: (e.n, METHODS.index(e.method))):
            writer.writerow([entry.n, str(entry.count), entry.method, f"{entry.log_rate:.12f}"])
        return buffer.getvalue()


def count_table(model: SubshiftModel, lengths: Sequence[int], methods: Sequence[str]) -> CountTable:
    table = CountTable(model=model.describe())
    for n in lengths:
        for method in methods:
            table.add(n, count_language(model, n, method), method)
    return table


@dataclass(frozen=True, slots=True)
class EntropyRow:
    n: int
    count: int | None
    log_rate: float

    @property
    def exact(self) -> bool:
        return self.count is not None


@dataclass(slots=True)
class EntropyTable:
    model: str
    rows: list[EntropyRow]

    @property
    def nonincreasing(self) -> bool:
        return all(later.log_rate <= earlier.log_rate + 1e-12 for earlier, later in zip(self.rows, self.rows[1:]))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["n", "count", "log_rate"])
        for row in self.rows:
            writer.writerow([row.n, "" if row.count is None else str(row.count), f"{row.log_rate:.12f}"])
        return buffer.getvalue()


def entropy_table(model: SubshiftModel, n_max: int, method: str = "dp") -> EntropyTable:
    """Log rates per length; dp rows past LEX_MAX_N come from the log-space
    recurrence and carry no exact count."""
    rows = []
    max_n = get_settings().max_n
    for n in range(1, n_max + 1):
        if method == "dp" and n > max_n:
            rows.append(EntropyRow(n=n, count=None, log_rate=log_count(model, n) / n))
            continue
        count = count_language(model, n, method)
        rows.append(EntropyRow(n=n, count=count, log_rate=math.log(count) / n))
    return EntropyTable(model=model.describe(), rows=rows)


def subadditivity_violations(counts: dict[int, int]) -> list[tuple[int, int]]:
    """Pairs (m, n) with |L_{m+n}| > |L_m|·|L_n| among the computed lengths."""
    violations = []
    for m in sorted(counts):
        for n in sorted(counts):
            if n < m or m + n not in counts:
                continue
            if counts[m + n] > counts[m] * counts[n]:
                violations.append((m, n))
    return violations


@dataclass(frozen=True, slots=True)
class GapFunction:
    evaluate: Callable[[int], int]
    description: str

    def __call__(self, n: int) -> int:
        return self.evaluate(n)


def constant_gap(value: int) -> GapFunction:
    return GapFunction(evaluate=lambda n: value, description=f"f(n) = {value}")


@dataclass(slots=True)
class GapReport:
    description: str
    n_max: int
    positive: bool
    nondecreasing: bool
    violations: list[str]
    max_ratio: Fraction
    max_ratio_at: int
    tail_ratio: Fraction
    n0: int | None

    @property
    def passed(self) -> bool:
        return self.positive and self.nondecreasing

    @property
    def growth_flag(self) -> bool:
        """True when f(n)/n at the end of the range is not yet small."""
        return self.tail_ratio >= Fraction(1, 10)


def check_gap_function(f: GapFunction, n_max: int, max_violations: int = 10) -> GapReport:
    if n_max < 1:
        raise LexError(f"n_max must be >= 1, got {n_max}")
    positive = True
    nondecreasing = True
    violations: list[str] = []
    previous: int | None = None
    max_ratio = Fraction(0)
    max_ratio_at = 1
    n0: int | None = None
    value = 0
    for n in range(1, n_max + 1):
        value = f(n)
        if value < 1:
            positive = False
            if len(violations) < max_violations:
                violations.append(f"f({n}) = {value} is not positive")
        if previous is not None and value < previous:
            nondecreasing = False
            if len(violations) < max_violations:
                violations.append(f"f({n}) = {value} < f({n - 1}) = {previous}")
        ratio = Fraction(value, n)
        if ratio > max_ratio:
            max_ratio, max_ratio_at = ratio, n
        if value <= n:
            if n0 is None:
                n0 = n
        else:
            n0 = None
        previous = value
    return GapReport(
        description=f.description,
        n_max=n_max,
        positive=positive,
        nondecreasing=nondecreasing,
        violations=violations,
        max_ratio=max_ratio,
        max_ratio_at=max_ratio_at,
        tail_ratio=Fraction(value, n_max),
        n0=n0,
    )
