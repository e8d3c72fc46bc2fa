"""Finite distributions, their characteristic polynomials and convolution.

A distribution on {0, ..., w} is stored aligned: the first and last
probabilities are nonzero. Its characteristic polynomial is
f(x) = sum_k p(k) x^k, so convolution of distributions is polynomial
multiplication and f(e^{iw}) is the characteristic function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AllZero, DegreeExceedsBound, MalformedInput, NegativeCoefficient, NegativeMass
from .matrix import RationalMatrix
from .rational import common_denominator, to_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = common_denominator(coeffs)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def int_convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Exact product of coefficient vectors, done in integers for speed."""
    if not a or not b:
        return ()
    ia, da = _to_ints(a)
    ib, db = _to_ints(b)
    den = da * db
    return tuple(Fraction(c, den) for c in int_convolve(ia, ib))


@dataclass(frozen=True)
class Poly:
    """Dense rational polynomial, lowest degree first, trimmed."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(to_fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, *coeffs) -> "Poly":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "Poly") -> "Poly":
        return Poly(poly_mul(self.coeffs, other.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __pow__(self, n: int) -> "Poly":
        result, base = Poly((ONE,)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        c = to_fraction(c)
        return Poly(tuple(c * x for x in self.coeffs))

    def reversed(self) -> "Poly":
        return Poly(tuple(reversed(self.coeffs)))

    def canonical(self) -> "Poly":
        """Representative of the positive-scaling class.

        Nonnegative polynomials are scaled to f(1) = 1, anything else to a
        monic polynomial with positive leading coefficient sign kept.
        """
        if self.is_zero():
            return self
        if self.is_nonnegative():
            return self.scale(1 / sum(self.coeffs))
        return self.scale(1 / abs(self.coeffs[-1]))

    def equivalent(self, other: "Poly") -> bool:
        return self.canonical() == other.canonical()


@dataclass(frozen=True)
class FiniteDistribution:
    """Aligned pmf on {0, ..., w} with exact rational masses summing to 1."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        p = tuple(to_fraction(x) for x in self.probs)
        if not p:
            raise MalformedInput("empty distribution")
        if any(x < 0 for x in p):
            raise NegativeMass("negative probability")
        if p[0] == 0 or p[-1] == 0:
            raise MalformedInput("distribution is not aligned")
        if sum(p) != 1:
            raise MalformedInput("probabilities do not sum to 1")
        object.__setattr__(self, "probs", p)

    @classmethod
    def of(cls, *probs) -> "FiniteDistribution":
        return cls(tuple(probs))

    @property
    def width(self) -> int:
        return len(self.probs) - 1

    @property
    def support(self) -> list[int]:
        return [k for k, x in enumerate(self.probs) if x]

    @property
    def support_size(self) -> int:
        return sum(1 for x in self.probs if x)

    def reversed(self) -> "FiniteDistribution":
        return FiniteDistribution(tuple(reversed(self.probs)))

    def __len__(self) -> int:
        return len(self.probs)


def normalize_distribution(raw: Iterable) -> tuple[FiniteDistribution, int]:
    """Trim zeros, rescale to total mass 1 and report the origin shift."""
    p = [to_fraction(x) for x in raw]
    if not p:
        raise MalformedInput("empty distribution")
    if any(x < 0 for x in p):
        raise NegativeMass("negative entry in raw distribution")
    total = sum(p, ZERO)
    if total == 0:
        raise AllZero("every entry is zero")
    shift = next(i for i, x in enumerate(p) if x)
    last = max(i for i, x in enumerate(p) if x)
    return FiniteDistribution(tuple(x / total for x in p[shift:last + 1])), shift


def uniform(k: int) -> FiniteDistribution:
    return FiniteDistribution(tuple(Fraction(1, k) for _ in range(k)))


def to_char_poly(d: FiniteDistribution) -> Poly:
    return Poly(d.probs)


def from_char_poly(f: Poly) -> FiniteDistribution:
    if f.is_zero():
        raise AllZero("zero polynomial")
    if not f.is_nonnegative():
        raise NegativeCoefficient("polynomial has a negative coefficient")
    return normalize_distribution(f.coeffs)[0]


def eval_characteristic(d: FiniteDistribution, omega: float) -> complex:
    z = cmath.exp(1j * omega)
    acc = 0j
    for p in reversed(d.probs):
        acc = acc * z + float(p)
    return acc


@dataclass(frozen=True)
class NormSpec:
    N: int
    p: float = math.inf

    def __post_init__(self):
        if self.N < 0:
            raise MalformedInput("degree bound must be nonnegative")
        if self.p not in (1, 2, math.inf):
            raise MalformedInput("norm order must be 1, 2 or inf")


def poly_norm(f: Poly, spec: NormSpec) -> float:
    """l^p norm of the coefficient vector padded to length N + 1.

    Padding with zeros does not change any l^p norm; the bound N only
    fixes the ambient space and is checked.
    """
    if f.degree > spec.N:
        raise DegreeExceedsBound(f"degree {f.degree} exceeds N={spec.N}")
    c = [abs(x) for x in f.coeffs]
    if not c:
        return 0.0
    if spec.p == 1:
        return float(sum(c))
    if spec.p == 2:
        return math.sqrt(sum(x * x for x in c))
    return float(max(c))


def convolve(d1: FiniteDistribution, d2: FiniteDistribution) -> FiniteDistribution:
    return FiniteDistribution(poly_mul(d1.probs, d2.probs))


def convolve_power(d: FiniteDistribution, n: int) -> FiniteDistribution:
    return FiniteDistribution((Poly(d.probs) ** n).coeffs)


def transition_matrix(d: FiniteDistribution, size: int) -> RationalMatrix:
    """Upper-triangular Toeplitz matrix with P[i][j] = p(j - i)."""
    if size < 1:
        raise MalformedInput("size must be at least 1")
    p = d.probs
    rows = []
    for i in range(size):
        rows.append(tuple(p[j - i] if 0 <= j - i < len(p) else ZERO for j in range(size)))
    return RationalMatrix(tuple(rows))
