"""Alphabets, words, Hamming distance and run decomposition."""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

from .errors import WordError

Word = tuple[int, ...]


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    @classmethod
    def of(cls, letter: int) -> "Sign":
        if letter > 0:
            return cls.POSITIVE
        if letter < 0:
            return cls.NEGATIVE
        return cls.ZERO


@dataclass(frozen=True, slots=True)
class SignedAlphabet:
    N: int
    includes_zero: bool

    def __post_init__(self) -> None:
        if self.N < 1:
            raise WordError(f"alphabet magnitude must be >= 1, got {self.N}")

    @property
    def letters(self) -> tuple[int, ...]:
        negatives = tuple(-letter for letter in reversed(self.positives))
        if self.includes_zero:
            return negatives + (0,) + self.positives
        return negatives + self.positives

    @property
    def positives(self) -> tuple[int, ...]:
        return tuple(range(1, self.N + 1))

    def __contains__(self, letter: object) -> bool:
        if not isinstance(letter, int):
            return False
        if letter == 0:
            return self.includes_zero
        return -self.N <= letter <= self.N

    def __len__(self) -> int:
        return 2 * self.N + (1 if self.includes_zero else 0)


def check_letters(w: Sequence[object], letters: Iterable[object], label: str = "") -> None:
    allowed = letters if isinstance(letters, (set, frozenset, SignedAlphabet)) else frozenset(letters)
    where = f"{label} alphabet" if label else "alphabet"
    for position, letter in enumerate(w):
        if letter not in allowed:
            raise WordError(f"letter {letter} at position {position} is outside the {where}")


def hamming(v: Sequence[int], w: Sequence[int]) -> int:
    if len(v) != len(w):
        raise WordError(f"unequal lengths: {len(v)} != {len(w)}")
    return sum(1 for a, b in zip(v, w) if a != b)


def negate(w: Sequence[int]) -> Word:
    return tuple(-letter for letter in w)


@dataclass(frozen=True, slots=True)
class Run:
    sign: Sign
    start: int
    length: int

    @property
    def stop(self) -> int:
        return self.start + self.length


@dataclass(frozen=True, slots=True)
class RunDecomposition:
    word: Word
    runs: tuple[Run, ...]


def run_decompose(w: Sequence[int]) -> RunDecomposition:
    if not w:
        raise WordError("cannot decompose the empty word")
    word = tuple(w)
    runs: list[Run] = []
    start = 0
    current = Sign.of(word[0])
    for index in range(1, len(word)):
        sign = Sign.of(word[index])
        if sign is not current:
            runs.append(Run(current, start, index - start))
            start = index
            current = sign
    runs.append(Run(current, start, len(word) - start))
    return RunDecomposition(word=word, runs=tuple(runs))


def parse_word(text: str) -> Word:
    """Read "1 1 0 0 -2" or the compact single-digit form "0211221100"."""
    stripped = text.strip()
    if not stripped:
        return ()
    try:
        if " " in stripped or stripped.startswith("-"):
            return tuple(int(token) for token in stripped.split())
        return tuple(int(char) for char in stripped)
    except ValueError as exc:
        raise WordError(f"cannot parse word {text!r}") from exc


def format_word(w: Sequence[int], compact: bool | None = None) -> str:
    if compact is None:
        compact = all(0 <= letter <= 9 for letter in w)
    if compact:
        return "".join(str(letter) for letter in w)
    return " ".join(str(letter) for letter in w)


def parse_word_list(text: str) -> list[Word]:
    return [parse_word(chunk) for chunk in text.split(",") if chunk.strip()]
