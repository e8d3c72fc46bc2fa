"""Exact rational parsing and formatting helpers."""

from __future__ import annotations

import math
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .errors import MalformedInput


def to_fraction(x) -> Fraction:
    """Convert ``x`` to a Fraction without any rounding.

    Strings may be ``"p/q"``, integers or decimals (``"0.26"``, ``"1e-3"``).
    Floats are converted through their shortest decimal repr so that a
    literal like ``0.1`` means one tenth rather than its binary neighbour.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise MalformedInput(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise MalformedInput(f"not a finite number: {x!r}")
        return Fraction(Decimal(repr(x)))
    if isinstance(x, str):
        s = x.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                return Fraction(int(num), int(den))
            return Fraction(Decimal(s))
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise MalformedInput(f"not a rational: {x!r}") from None
    raise MalformedInput(f"not a rational: {x!r}")


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (Fraction(v).denominator for v in values), 1)
