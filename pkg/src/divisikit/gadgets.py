"""Subset sum instances encoded as products of quadratic gadgets.

Each element becomes g(b, x) = x^2 + b x + 1. A sub-product over a set
T of gadgets is nonnegative exactly when sum_{i in T} b_i > 0, provided
the b_i are small enough; `dominance_holds` checks a sufficient
condition for that in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .dist import FiniteDistribution, Poly
from .errors import DegenerateGadget, MalformedInput
from .nptools import PartitionInstance, SubsetSumInstance, partition_to_subset_sum
from .rational import common_denominator, to_fraction


@dataclass(frozen=True)
class GadgetParams:
    """delta = c / n^2 bounds max|b_i|; the scale a is derived from it."""

    c: Fraction = Fraction(1, 4)
    max_halvings: int = 400

    def __post_init__(self):
        object.__setattr__(self, "c", to_fraction(self.c))
        if self.c <= 0:
            raise MalformedInput("delta constant must be positive")

    def delta(self, n: int) -> Fraction:
        return self.c / (n * n)


@dataclass(frozen=True)
class Gadget:
    b: tuple[Fraction, ...]
    scale: Fraction
    margin: Fraction  # |sum_T b| >= margin on every decisive sub-sum
    poly: Poly
    dist: FiniteDistribution


def gadget_poly(b: Sequence[Fraction]) -> Poly:
    """Coefficients of prod (x^2 + b_i x + 1) via elementary symmetric sums."""
    k = len(b)
    e = [Fraction(1)] + [Fraction(0)] * k
    for bi in b:
        for r in range(k, 0, -1):
            e[r] += bi * e[r - 1]
    coeffs = [Fraction(0)] * (2 * k + 1)
    for r in range(k + 1):
        if e[r]:
            # x^r from r linear terms, (x^2 + 1)^(k-r) supplies the rest
            for j in range(k - r + 1):
                coeffs[r + 2 * j] += e[r] * comb(k - r, j)
    return Poly(coeffs)


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def dominance_holds(k: int, mu: Fraction, delta: Fraction) -> bool:
    """Sufficient condition for a product of k gadgets to be nonnegative.

    Assumes |b_i| <= delta and sum b_i >= mu > 0. Odd coefficient 2j+1
    is at least C(k-1, j) mu minus the higher odd symmetric sums, even
    coefficient 2j at least C(k, j) minus the even ones.
    """
    if k == 0:
        return True
    powers = [delta ** r for r in range(k + 1)]
    for j in range(k):
        noise = sum((_binom(k - r, j - (r - 1) // 2) * comb(k, r) * powers[r]
                     for r in range(3, k + 1, 2)), Fraction(0))
        if _binom(k - 1, j) * mu <= noise:
            return False
    for j in range(k + 1):
        noise = sum((_binom(k - r, j - r // 2) * comb(k, r) * powers[r]
                     for r in range(2, k + 1, 2)), Fraction(0))
        if _binom(k, j) <= noise:
            return False
    return True


def _power_of_two_below(x: Fraction) -> Fraction:
    """Largest 2^-j strictly below x (x > 0)."""
    a = Fraction(1)
    while a >= x:
        a /= 2
    while 2 * a < x:
        a *= 2
    return a


def _build(u: Sequence[Fraction], mu: Fraction, sizes: Sequence[int], a: Fraction,
           params: GadgetParams) -> Gadget:
    r = max(abs(x) for x in u)
    for _ in range(params.max_halvings):
        delta = a * r
        if delta < 2 and all(dominance_holds(k, a * mu, delta) for k in sizes):
            break
        a /= 2
    else:
        raise DegenerateGadget("no admissible scale found")
    b = tuple(a * x for x in u)
    poly = gadget_poly(b)
    if any(c <= 0 for c in poly.coeffs):
        raise DegenerateGadget("gadget product has a nonpositive coefficient")
    total = poly(Fraction(1))
    return Gadget(b, a, a * mu, poly, FiniteDistribution(tuple(c / total for c in poly.coeffs)))


def even_gadget(s: SubsetSumInstance, params: GadgetParams = GadgetParams()) -> Gadget:
    """Gadget whose equal-degree splits mirror the even subset sum windows.

    With l' = l - 1/(2Q) (Q the common denominator) the additive term is
    chosen so that for |T| = n/2 the half sum is a(D(T) + l')/2. Both
    halves are positive iff |D(T)| < l' iff |D(T)| < l.
    """
    n = len(s.elements)
    if n < 2 or n % 2:
        raise MalformedInput("even encoder needs an even number (>= 2) of elements")
    if s.bound <= 0:
        raise DegenerateGadget("bound must be positive")
    q = common_denominator(list(s.elements) + [s.bound])
    inner = s.bound - Fraction(1, 2 * q)
    mean = s.total / n
    u = [e - mean + inner / n for e in s.elements]
    mu = Fraction(1, 4 * q)
    r = max(abs(x) for x in u)
    a = _power_of_two_below(params.delta(n) / r)
    return _build(u, mu, (n // 2, n), a, params)


def encode_even_subset_sum(s: SubsetSumInstance, params: GadgetParams = GadgetParams()) -> FiniteDistribution:
    return even_gadget(s, params).dist


def partition_gadget(p: PartitionInstance, params: GadgetParams = GadgetParams()) -> Gadget:
    """Gadget whose degree-preserving splits into two pmfs mirror partitions of p.

    Built from the plain instance with bound equal to its total. The scale
    is the largest power of two for which every sub-product of gadgets
    with positive linear coefficient sum is certified nonnegative.
    """
    s = partition_to_subset_sum(p)
    u = list(s.elements)
    n = len(u)
    mu = Fraction(1, 4 * common_denominator(p.elements))
    return _build(u, mu, range(1, n + 1), _power_of_two_below(Fraction(2) / max(abs(x) for x in u)), params)


def certified_eps(g: Gadget) -> Fraction:
    """Error floor of every candidate split of a partition-No gadget.

    A split factor with linear coefficient <= -margin loses at least that
    much mass when clamped, which lowers the constant term of the renormalised
    product. Real-split candidates all equal (1+x)^(2n)/4^n and miss the
    linear coefficient.
    """
    n = len(g.b)
    delta = max(abs(b) for b in g.b)
    total = g.poly(Fraction(1))
    clamp = g.margin / (total * ((2 + delta) ** (n - 1) + g.margin))
    split = abs(Fraction(2 * n, 4 ** n) - g.dist.probs[1])
    return min(clamp, split)


def encode_subset_sum_eps(p, eps=0, params: GadgetParams = GadgetParams()) -> FiniteDistribution:
    """Partition gadget for the eps-relaxed decomposability question.

    The gadget itself does not depend on eps; `certified_eps` bounds the
    eps below which a partition-No instance stays eps-indecomposable.
    """
    if to_fraction(eps) < 0:
        raise MalformedInput("eps must be nonnegative")
    if isinstance(p, SubsetSumInstance):
        p = PartitionInstance(p.elements)
    return partition_gadget(p, params).dist
