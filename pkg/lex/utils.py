from __future__ import annotations

from fractions import Fraction

from .errors import LexError


def ceil_log(base: int, x: int) -> int:
    """Smallest t >= 0 with base**t >= x, in exact integer arithmetic."""
    t = 0
    power = 1
    while power < x:
        power *= base
        t += 1
    return t


def floor_log2(n: int) -> int:
    if n < 1:
        raise LexError(f"floor_log2 needs a positive integer, got {n}")
    return n.bit_length() - 1


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise LexError(f"not a rational number: {text!r}") from exc


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_int_list(text: str, what: str = "integers") -> list[int]:
    try:
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError as exc:
        raise LexError(f"cannot parse {what} {text!r}") from exc
