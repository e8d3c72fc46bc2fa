"""Closed float intervals with outward rounding.

Every operation widens its result by one ulp on each side, so the
enclosure property survives floating point rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

_down = lambda x: math.nextafter(x, -math.inf)
_up = lambda x: math.nextafter(x, math.inf)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(_down(x), _up(x)) if x else cls(0.0, 0.0)

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __add__(self, o: "Interval") -> "Interval":
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    def __sub__(self, o: "Interval") -> "Interval":
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __mul__(self, o: "Interval") -> "Interval":
        if self.lo >= 0 and o.lo >= 0:
            return Interval(_down(self.lo * o.lo), _up(self.hi * o.hi))
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    def scale(self, c: float) -> "Interval":
        a, b = self.lo * c, self.hi * c
        return Interval(_down(min(a, b)), _up(max(a, b)))

    def __pow__(self, k: int) -> "Interval":
        out = Interval(1.0, 1.0)
        for _ in range(k):
            out = out * self
        return out

    def divide_positive(self, o: "Interval") -> "Interval":
        """self / o for an interval o with o.lo > 0."""
        ps = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    def intersect(self, o: "Interval") -> "Interval":
        return Interval(max(self.lo, o.lo), min(self.hi, o.hi))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


ZERO = Interval(0.0, 0.0)


def interval_convolve(a: Sequence[Interval], b: Sequence[Interval]) -> list[Interval]:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def interval_power(a: Sequence[Interval], n: int) -> list[Interval]:
    out = list(a)
    for _ in range(n - 1):
        out = interval_convolve(out, a)
    return out
