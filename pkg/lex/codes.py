from __future__ import annotations

import itertools
import logging
import math
import time
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Sequence

from .config import get_settings
from .errors import BudgetExceeded, CodeError
from .state import code_store
from .utils import floor_log2
from .words import Word, format_word, hamming

LOGGER = logging.getLogger(__name__)


class CodeFamily(str, Enum):
    T = "T"
    U = "U"
    V = "V"
    S = "S"


def normalize_letters(letters: Iterable[int]) -> tuple[int, ...]:
    normalized = tuple(sorted(set(letters)))
    if not normalized:
        raise CodeError("alphabet must not be empty")
    return normalized


# parity and modular sums run over letter indices 0..a-1, ascending by value
def letter_index(letters: Sequence[int]) -> dict[int, int]:
    return {letter: index for index, letter in enumerate(letters)}


def letter_digits(index: dict[int, int], w: Sequence[int]) -> list[int]:
    try:
        return [index[letter] for letter in w]
    except KeyError as exc:
        raise CodeError(f"letter {exc.args[0]} is not in the alphabet {sorted(index)}") from exc


@dataclass(frozen=True, slots=True)
class Code:
    letters: tuple[int, ...]
    n: int
    family: CodeFamily
    cardinality: int
    params: dict[str, Any] = field(default_factory=dict)
    predicate: Callable[[Word], bool] | None = None
    explicit: frozenset[Word] | None = None
    radius: int | None = None
    separation: int | None = None
    parts: tuple["Code", ...] = ()

    @property
    def a(self) -> int:
        return len(self.letters)

    def contains(self, w: Sequence[int]) -> bool:
        word = tuple(w)
        if len(word) != self.n:
            return False
        if self.explicit is not None:
            return word in self.explicit
        if self.predicate is None:
            raise CodeError(f"code {self.family.value} has neither members nor predicate")
        return self.predicate(word)

    def members(self, budget: int | None = None) -> tuple[Word, ...]:
        if self.explicit is not None:
            return tuple(sorted(self.explicit))
        limit = budget if budget is not None else get_settings().budget
        if self.a**self.n > limit:
            raise BudgetExceeded(f"cube of {self.a}^{self.n} words exceeds the enumeration budget of {limit}")
        return tuple(w for w in itertools.product(self.letters, repeat=self.n) if self.contains(w))

    def header(self) -> str:
        params = " ".join(f"{key}={value}" for key, value in sorted(self.params.items()))
        return f"family={self.family.value} a={self.a} n={self.n} {params} cardinality={self.cardinality}".replace("  ", " ")

    def to_text(self, budget: int | None = None) -> str:
        compact = all(0 <= letter <= 9 for letter in self.letters)
        lines = [self.header()]
        lines.extend(format_word(w, compact=compact) for w in self.members(budget))
        return "\n".join(lines) + "\n"


# --- T: truncated Hamming classes -------------------------------------------


def _t_masks(n: int) -> tuple[int, list[int]]:
    m = floor_log2(n)
    full = (1 << m) - 1
    return m, [~i & full for i in range(1 << m)]


def parse_parity_vector(text: str) -> tuple[int, ...]:
    if any(char not in "01" for char in text):
        raise CodeError(f"parity vector must be a 0/1 string, got {text!r}")
    return tuple(int(char) for char in text)


def _vector_mask(v: Sequence[int]) -> int:
    return sum(bit << j for j, bit in enumerate(v))


def _check_vector(n: int, v: Sequence[int]) -> int:
    m = floor_log2(n)
    if len(v) != m:
        raise CodeError(f"parity vector has length {len(v)}, expected m = floor(log2 {n}) = {m}")
    return m


def t_syndrome(letters: Sequence[int], n: int, w: Sequence[int]) -> int:
    """Bit j holds the parity of the index sum over positions whose j-th bit is 0."""
    if len(w) != n:
        raise CodeError(f"word has length {len(w)}, expected {n}")
    index = letter_index(letters)
    _, masks = _t_masks(n)
    state = 0
    for digit, mask in zip(letter_digits(index, w), masks):
        if digit & 1:
            state ^= mask
    return state


def t_membership(letters: Sequence[int], n: int, v: Sequence[int], w: Sequence[int]) -> bool:
    _check_vector(n, v)
    letters = normalize_letters(letters)
    return t_syndrome(letters, n, w) == _vector_mask(v)


def t_class_counts(letters: Sequence[int], n: int) -> list[int]:
    """|T_{A,n,v}| for every v at once, indexed by the bit mask of v."""
    letters = normalize_letters(letters)

    def _build() -> list[int]:
        a = len(letters)
        odd = a // 2
        even = a - odd
        m, masks = _t_masks(n)
        dist = [0] * (1 << m)
        dist[0] = 1
        for mask in masks:
            dist = [even * dist[s] + odd * dist[s ^ mask] for s in range(len(dist))]
        free = a ** (n - (1 << m))
        return [count * free for count in dist]

    return code_store.get(("T-classes", letters, n), _build)


def log_t_min_class(a: int, n: int) -> float:
    """ln of the smallest T class over a letters. Every class with v != 0 has
    (a^(2^m) - (a·(a mod 2))^(2^(m-1))) / 2^m · a^(n - 2^m) members."""
    if a < 2 or n < 1:
        raise CodeError(f"T classes need a >= 2 and n >= 1, got a={a} n={n}")
    m = floor_log2(n)
    if m == 0:
        return n * math.log(a)
    return n * math.log(a) - m * math.log(2) + math.log1p(-((a % 2) / a) ** (1 << (m - 1)))


def count_t_class(letters: Sequence[int], n: int, v: Sequence[int]) -> int:
    _check_vector(n, v)
    return t_class_counts(letters, n)[_vector_mask(v)]


def build_T(letters: Sequence[int], n: int) -> Code:
    if n < 1:
        raise CodeError(f"T codes need n >= 1, got {n}")
    letters = normalize_letters(letters)

    def _build() -> Code:
        m = floor_log2(n)
        counts = t_class_counts(letters, n)
        best: tuple[int, ...] = ()
        best_count: int | None = None
        for v in itertools.product((0, 1), repeat=m):
            count = counts[_vector_mask(v)]
            if best_count is None or count < best_count:
                best, best_count = v, count
        assert best_count is not None
        a = len(letters)
        if best_count * (1 << m) > a**n:
            raise CodeError(f"T class of size {best_count} breaks the bound {a}^{n}/2^{m}")
        mask = _vector_mask(best)
        LOGGER.debug("Built T code a=%d n=%d v=%s cardinality=%d", a, n, best, best_count)
        return Code(
            letters=letters,
            n=n,
            family=CodeFamily.T,
            cardinality=best_count,
            params={"v": "".join(map(str, best))},
            predicate=lambda w: t_syndrome(letters, n, w) == mask,
            radius=1,
        )

    return code_store.get(("T", letters, n), _build)


def repair_T(letters: Sequence[int], n: int, v: Sequence[int], w: Sequence[int]) -> Word:
    m = _check_vector(n, v)
    letters = normalize_letters(letters)
    word = tuple(w)
    target = _vector_mask(v)
    syndrome = t_syndrome(letters, n, word)
    satisfied = ~(syndrome ^ target) & ((1 << m) - 1)
    if satisfied == (1 << m) - 1:
        return word
    i = satisfied
    index = letter_index(letters)
    parity = index[word[i]] & 1
    replacement = next((letter for letter in letters if index[letter] & 1 != parity), None)
    if replacement is None:
        raise CodeError("no opposite-parity letter")
    return word[:i] + (replacement,) + word[i + 1:]


# --- U and V: 2-spanning codes ----------------------------------------------


def build_U(letters: Sequence[int], n: int) -> Code:
    if n < 2:
        raise CodeError(f"U codes need n >= 2, got {n}")
    letters = normalize_letters(letters)
    half = n // 2
    head = build_T(letters, half)
    tail = build_T(letters, n - half)
    cardinality = head.cardinality * tail.cardinality
    a = len(letters)
    if cardinality * n * n > 16 * a**n:
        raise CodeError(f"U code of size {cardinality} breaks the bound 16*{a}^{n}/{n}^2")
    return Code(
        letters=letters,
        n=n,
        family=CodeFamily.U,
        cardinality=cardinality,
        params={"halves": f"{half}+{n - half}", "v": f"{head.params['v']}|{tail.params['v']}"},
        predicate=lambda w: head.contains(w[:half]) and tail.contains(w[half:]),
        radius=2,
        parts=(head, tail),
    )


def v_anchor(letters: Sequence[int]) -> int:
    """1 when present, -1 for a negative alphabet, else the letter of index 1."""
    letters = normalize_letters(letters)
    if 1 in letters:
        return 1
    if -1 in letters:
        return -1
    return letters[min(1, len(letters) - 1)]


def build_V(letters: Sequence[int], n: int) -> Code:
    if n < 2:
        raise CodeError(f"V codes need n >= 2, got {n}")
    letters = normalize_letters(letters)
    anchor = v_anchor(letters)
    return Code(
        letters=letters,
        n=n,
        family=CodeFamily.V,
        cardinality=len(letters) ** (n - 2),
        params={"anchor": anchor},
        predicate=lambda w: w[0] == anchor and w[1] == anchor,
        radius=2,
    )


def repair_spanning(code: Code, w: Sequence[int]) -> Word:
    word = tuple(w)
    if len(word) != code.n:
        raise CodeError(f"word has length {len(word)}, code has length {code.n}")
    if code.family is CodeFamily.T:
        v = parse_parity_vector(code.params["v"])
        return repair_T(code.letters, code.n, v, word)
    if code.family is CodeFamily.U:
        head, tail = code.parts
        return repair_spanning(head, word[:head.n]) + repair_spanning(tail, word[head.n:])
    if code.family is CodeFamily.V:
        anchor = code.params["anchor"]
        return (anchor, anchor) + word[2:]
    raise CodeError(f"family {code.family.value} is not a spanning code")


# --- S: 3-separated extraction -----------------------------------------------


def _class_key(index: dict[int, int], a: int, n: int, w: Sequence[int]) -> tuple[int, int]:
    digits = letter_digits(index, w)
    return sum(digits) % (2 * a), sum(k * x for k, x in enumerate(digits, start=1)) % (2 * a * n)


def class_partition(W: Iterable[Sequence[int]], letters: Sequence[int], n: int) -> dict[tuple[int, int], list[Word]]:
    letters = normalize_letters(letters)
    index = letter_index(letters)
    a = len(letters)
    classes: dict[tuple[int, int], list[Word]] = defaultdict(list)
    for w in W:
        if len(w) != n:
            raise CodeError(f"word of length {len(w)} in a set of length-{n} words")
        classes[_class_key(index, a, n, w)].append(tuple(w))
    return dict(classes)


def extract_3_separated(W: Iterable[Sequence[int]], letters: Sequence[int], n: int) -> Code:
    source = sorted({tuple(w) for w in W})
    if not source:
        raise CodeError("cannot extract a separated set from an empty word set")
    letters = normalize_letters(letters)
    classes = class_partition(source, letters, n)
    key = min(classes, key=lambda ij: (-len(classes[ij]), ij))
    chosen = frozenset(classes[key])
    a = len(letters)
    if len(chosen) * 4 * n * a * a < len(source):
        raise CodeError(f"largest class has {len(chosen)} words, below |W|/(4na^2)")
    return Code(
        letters=letters,
        n=n,
        family=CodeFamily.S,
        cardinality=len(chosen),
        params={"i": key[0], "j": key[1], "source": len(source)},
        explicit=chosen,
        separation=3,
    )


# --- exhaustive verifiers ----------------------------------------------------


def verify_spanning(code: Code, radius: int, budget: int | None = None) -> bool:
    limit = budget if budget is not None else get_settings().budget
    a, n = code.a, code.n
    total = a**n
    if total > limit:
        raise BudgetExceeded(f"cube of {a}^{n} words exceeds the enumeration budget of {limit}")
    started = time.perf_counter()
    index = letter_index(code.letters)
    weights = [a ** (n - 1 - p) for p in range(n)]
    covered = bytearray(total)
    for member in code.members(limit):
        digits = [index[letter] for letter in member]
        value = sum(d * wt for d, wt in zip(digits, weights))
        for r in range(radius + 1):
            for positions in itertools.combinations(range(n), r):
                choices = [[d - digits[p] for d in range(a) if d != digits[p]] for p in positions]
                for deltas in itertools.product(*choices):
                    covered[value + sum(delta * weights[p] for delta, p in zip(deltas, positions))] = 1
    ok = covered.count(0) == 0
    LOGGER.debug("Spanning check %s radius=%d -> %s in %.2fs", code.header(), radius, ok, time.perf_counter() - started)
    return ok


def verify_separated(S: Iterable[Sequence[int]], d_min: int) -> bool:
    words = sorted({tuple(w) for w in S})
    for first, second in itertools.combinations(words, 2):
        if hamming(first, second) < d_min:
            return False
    return True
