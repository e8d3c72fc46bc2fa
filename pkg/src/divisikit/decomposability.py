"""Decomposability of finite distributions into two non-constant summands.

A distribution decomposes iff its characteristic polynomial splits into
two factors of positive degree with nonnegative coefficients. Since
R[x] is a unique factorization domain, every such split groups the
real irreducible factors, so an exhaustive scan over sub-multisets of
the factorization decides the question. Products of exact rational
factors are checked exactly; products involving numerically computed
factors use a tolerance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

import mpmath

from .dist import FiniteDistribution, Poly, convolve, from_char_poly, normalize_distribution
from .errors import InvalidEpsilon, InvalidSupportBound, MalformedInput, OddDegree
from .factor import RealFactor, RealFactorization, factor_real, product, to_mpf
from .rational import to_fraction

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Decomposition:
    left: FiniteDistribution
    right: FiniteDistribution
    exact: bool
    # max norm distance between left * right and the input
    error: Fraction = Fraction(0)


@dataclass(frozen=True)
class Grouping:
    """Complete decomposition: indecomposable parts summing to the input."""

    parts: tuple[FiniteDistribution, ...]
    exact: bool


@dataclass(frozen=True)
class CompleteDecompositions:
    groupings: tuple[Grouping, ...]
    truncated: bool


# sub-multiset bookkeeping

def _count_vectors(mults: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(k + 1) for k in mults))


def _expand(counts: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, k in enumerate(counts) for _ in range(k))


class _Factors:
    """Distinct real factors with multiplicities and cached products."""

    def __init__(self, fz: RealFactorization, tol: float):
        self.items = [f for f, _ in fz.factors]
        self.mults = tuple(k for _, k in fz.factors)
        self.tol = tol
        self._cache: dict[tuple[int, ...], tuple[tuple, bool]] = {}

    @property
    def full(self) -> tuple[int, ...]:
        return self.mults

    def degree(self, counts) -> int:
        return sum(f.degree * k for f, k in zip(self.items, counts))

    def product(self, counts) -> tuple[tuple, bool]:
        counts = tuple(counts)
        if counts not in self._cache:
            self._cache[counts] = product([self.items[i] for i in _expand(counts)])
        return self._cache[counts]

    def nonnegative(self, counts) -> bool:
        c, exact = self.product(counts)
        if exact:
            return all(x >= 0 for x in c)
        scale = sum(abs(x) for x in c)
        return all(x >= -self.tol * scale for x in c)

    def support_size(self, counts) -> int:
        c, exact = self.product(counts)
        if exact:
            return sum(1 for x in c if x)
        scale = max(abs(x) for x in c)
        return sum(1 for x in c if abs(x) > self.tol * scale)

    def distribution(self, counts) -> tuple[FiniteDistribution, bool]:
        """Clamp negative dust, renormalise and convert to a pmf."""
        c, exact = self.product(counts)
        if exact:
            return from_char_poly(Poly(c)), True
        vals = [Fraction(float(x)) if x > 0 else Fraction(0) for x in c]
        return normalize_distribution(vals)[0], False

    def bipartitions(self) -> list[tuple[int, ...]]:
        full = self.full
        out = [c for c in _count_vectors(full) if any(c) and c != full]
        out.sort(key=lambda c: (self.degree(c), _expand(c)))
        return out

    def complement(self, counts) -> tuple[int, ...]:
        return tuple(m - k for m, k in zip(self.mults, counts))


def _max_dev(a: FiniteDistribution, b: FiniteDistribution) -> Fraction:
    n = max(len(a), len(b))
    pa = list(a.probs) + [Fraction(0)] * (n - len(a))
    pb = list(b.probs) + [Fraction(0)] * (n - len(b))
    return max(abs(x - y) for x, y in zip(pa, pb))


def _search(d: FiniteDistribution, tol: float, accept: Callable[[_Factors, tuple], bool],
            precision: int = 53) -> Optional[Decomposition]:
    if d.support_size < 2:
        return None
    fs = _Factors(factor_real(Poly(d.probs), precision, tol), tol)
    for left in fs.bipartitions():
        right = fs.complement(left)
        if not accept(fs, left):
            continue
        if not (fs.nonnegative(left) and fs.nonnegative(right)):
            continue
        dl, el = fs.distribution(left)
        dr, er = fs.distribution(right)
        err = _max_dev(convolve(dl, dr), d)
        if el and er:
            if err != 0:
                raise AssertionError("exact decomposition failed to reconvolve")
        elif err > tol:
            continue
        return Decomposition(dl, dr, el and er, err)
    return None


def decompose(d: FiniteDistribution, tol: float = DEFAULT_TOL, precision: int = 53) -> Optional[Decomposition]:
    """First split (by left degree, then factor indices) into nonnegative parts."""
    return _search(d, tol, lambda fs, c: True, precision)


def decompose_m(d: FiniteDistribution, m: int, tol: float = DEFAULT_TOL,
                precision: int = 53) -> Optional[Decomposition]:
    """Decomposition whose left summand has exactly m support points."""
    if m < 2 or m >= d.support_size:
        raise InvalidSupportBound(f"need 2 <= m < {d.support_size}, got {m}")
    return _search(d, tol, lambda fs, c: fs.support_size(c) == m, precision)


def decompose_even(d: FiniteDistribution, tol: float = DEFAULT_TOL,
                   precision: int = 53) -> Optional[Decomposition]:
    """Decomposition into two summands of equal degree."""
    if d.width % 2:
        raise OddDegree(f"degree {d.width} is odd")
    half = d.width // 2
    return _search(d, tol, lambda fs, c: fs.degree(c) == half, precision)


def _real_split(fz: RealFactorization) -> RealFactorization:
    """Replace each irreducible quadratic x^2 + b x + c by (x + sqrt c)^2."""
    out: dict = {}
    order = []
    for f, k in fz.factors:
        if f.degree == 2:
            c = f.coeffs[0]
            root = None
            if f.exact:
                num, den = math.isqrt(c.numerator), math.isqrt(c.denominator)
                if num * num == c.numerator and den * den == c.denominator:
                    root = Fraction(num, den)
            if root is None:
                with mpmath.workprec(256):
                    lin = RealFactor((mpmath.sqrt(to_mpf(c)), mpmath.mpf(1)), False, f.group)
            else:
                lin = RealFactor((root, Fraction(1)), True, f.group)
            pieces = [(lin, 2 * k)]
        else:
            pieces = [(f, k)]
        for p, kk in pieces:
            key = (p.coeffs, p.exact)
            if key not in out:
                order.append(key)
                out[key] = (p, 0)
            out[key] = (p, out[key][1] + kk)
    factors = tuple(out[k] for k in order)
    return RealFactorization(factors, fz.scale, fz.residual, fz.groups)


def decompose_eps(d: FiniteDistribution, eps, tol: float = DEFAULT_TOL,
                  precision: int = 53) -> Optional[Decomposition]:
    """Find pmfs L, R with deg L + deg R = deg d and max|L*R - d| < eps.

    Candidates are the factor splits of d, with negative coefficients
    clamped to zero and renormalised. If none qualifies, the same scan is
    repeated after moving the roots of every irreducible quadratic onto
    the negative real axis.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise InvalidEpsilon("epsilon must be positive")
    if d.width < 2:
        return None
    fz = factor_real(Poly(d.probs), precision, tol)
    for stage in (fz, _real_split(fz)):
        fs = _Factors(stage, tol)
        for left in fs.bipartitions():
            right = fs.complement(left)
            try:
                dl, el = fs.distribution(left)
                dr, er = fs.distribution(right)
            except Exception:
                continue
            if dl.width + dr.width != d.width:
                continue
            err = _max_dev(convolve(dl, dr), d)
            if err < eps:
                return Decomposition(dl, dr, el and er and err == 0, err)
    return None


def weak_decomposability(d: FiniteDistribution, eps) -> bool:
    return decompose_eps(d, eps) is not None


def enumerate_complete_decompositions(d: FiniteDistribution, tol: float = DEFAULT_TOL,
                                      limit: int = 1000, precision: int = 53) -> CompleteDecompositions:
    """Distinct groupings of the real factors into indecomposable nonnegative parts."""
    if limit < 1:
        raise MalformedInput("limit must be at least 1")
    fs = _Factors(factor_real(Poly(d.probs), precision, tol), tol)
    vectors = [c for c in _count_vectors(fs.full) if any(c)]
    nonneg = {c: fs.nonnegative(c) for c in vectors}

    def indecomposable(c) -> bool:
        for sub in _count_vectors(c):
            if any(sub) and sub != c and nonneg[sub] and nonneg[fs_sub(c, sub)]:
                return False
        return True

    def fs_sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    good = {c for c in vectors if nonneg[c] and indecomposable(c)}
    found: list[tuple[tuple[int, ...], ...]] = []
    seen: set = set()
    truncated = False

    def rec(rem: tuple[int, ...], blocks: list[tuple[int, ...]]) -> bool:
        nonlocal truncated
        if not any(rem):
            key = tuple(sorted(blocks))
            if key not in seen:
                if len(found) >= limit:
                    truncated = True
                    return False
                seen.add(key)
                found.append(key)
            return True
        first = next(i for i, k in enumerate(rem) if k)
        for c in _count_vectors(rem):
            if c[first] and c in good:
                if not rec(fs_sub(rem, c), blocks + [c]):
                    return False
        return True

    rec(fs.full, [])
    groupings = []
    for key in found:
        parts, exact = [], True
        for c in key:
            dist, ex = fs.distribution(c)
            parts.append(dist)
            exact = exact and ex
        total = parts[0]
        for p in parts[1:]:
            total = convolve(total, p)
        if _max_dev(total, d) > (0 if exact else tol):
            continue
        groupings.append(Grouping(tuple(parts), exact))
    return CompleteDecompositions(tuple(groupings), truncated)


def counterexample_family(n: int, variant: str = "standard") -> FiniteDistribution:
    """Normalised product of (1 + a_k x + x^2)(1 + b_k x + x^2), k = 1..n.

    a_k = 1 + k/(2n) and b_k = -k/(2n), or b_k = -k/(2n^2) for the
    extended variant. Every pairing of one a-factor with one b-factor is
    a nonnegative indecomposable quartic, giving at least n! complete
    decompositions.
    """
    if n < 1:
        raise MalformedInput("n must be at least 1")
    if variant not in ("standard", "extended"):
        raise MalformedInput(f"unknown variant {variant!r}")
    f = Poly.of(1)
    for k in range(1, n + 1):
        a = 1 + Fraction(k, 2 * n)
        b = -Fraction(k, 2 * n) if variant == "standard" else -Fraction(k, 2 * n * n)
        f = f * Poly.of(1, a, 1) * Poly.of(1, b, 1)
    return from_char_poly(f)
