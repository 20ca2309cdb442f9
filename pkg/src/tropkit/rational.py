"""Exact scalars: rational parsing/formatting and a signed infinity marker."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from numbers import Rational


@total_ordering
class Infinity:
    """Signed infinity. Compares above (or below) every rational."""

    __slots__ = ("sign",)

    def __init__(self, sign: int = 1):
        self.sign = 1 if sign > 0 else -1

    def __neg__(self) -> Infinity:
        return Infinity(-self.sign)

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinity) and other.sign == self.sign

    def __lt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self) -> int:
        return hash(("inf", self.sign))

    def __repr__(self) -> str:
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__


INF = Infinity(1)
NEG_INF = Infinity(-1)


def to_rational(x) -> Fraction:
    """Convert int, Fraction or a string like ``"-1/3"`` to a Fraction.

    Floats are rejected so nothing inexact enters the kernel.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        if any(c in s for c in ".eE") and "/" not in s:
            raise ValueError(f"decimal literal {x!r} is not accepted; use p/q")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_scalar(x):
    """Rational or infinity from JSON-ish input ("inf", "-inf", "p/q", int)."""
    if isinstance(x, Infinity):
        return x
    if isinstance(x, str) and x.strip() in ("inf", "+inf", "infinity"):
        return INF
    if isinstance(x, str) and x.strip() in ("-inf", "-infinity"):
        return NEG_INF
    return to_rational(x)


def format_scalar(x) -> str:
    if isinstance(x, Infinity):
        return str(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v) -> str:
    return " ".join(format_scalar(c) for c in v)
