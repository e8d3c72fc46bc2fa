"""Real factorization of rational polynomials.

The polynomial is first factored exactly over the rationals. Rational
factors of degree one, and quadratics with negative discriminant, are
already real-irreducible and stay exact. Every other rational factor is
split numerically: its complex roots are computed with mpmath, conjugate
pairs become quadratics and real roots become linear factors. The
working precision is escalated until the pieces multiply back to the
rational factor within tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath
import sympy

from .dist import Poly, poly_mul
from .errors import MalformedInput, PrecisionExhausted

Number = Union[Fraction, mpmath.mpf]

PRECISION_LADDER = (53, 128, 256)


@dataclass(frozen=True)
class RealFactor:
    """Monic real factor x + r or x^2 + b x + c, lowest degree first."""

    coeffs: tuple
    exact: bool
    # index of the rational factor this piece came from
    group: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)


@dataclass(frozen=True)
class RealFactorization:
    factors: tuple[tuple[RealFactor, int], ...]
    scale: Fraction
    residual: float
    # degree and multiplicity of each rational factor, by group index
    groups: tuple[tuple[int, int], ...]

    def expanded(self) -> list[RealFactor]:
        return [f for f, k in self.factors for _ in range(k)]

    @property
    def degree(self) -> int:
        return sum(f.degree * k for f, k in self.factors)


def mp_mul(a: Sequence, b: Sequence) -> list:
    out = [mpmath.mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def product(factors: Sequence[RealFactor]) -> tuple[tuple, bool]:
    """Coefficients of a product of monic factors and whether it is exact."""
    if all(f.exact for f in factors):
        c: tuple = (Fraction(1),)
        for f in factors:
            c = poly_mul(c, f.coeffs)
        return c, True
    with mpmath.workprec(PRECISION_LADDER[-1]):
        c = [mpmath.mpf(1)]
        for f in factors:
            c = mp_mul(c, [to_mpf(x) for x in f.coeffs])
    return tuple(c), False


def to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _split_numeric(q: Sequence[Fraction], group: int, bits: int) -> tuple[list[RealFactor], float]:
    """Split a squarefree rational polynomial into real pieces at `bits` precision."""
    with mpmath.workprec(bits):
        lead = q[-1]
        monic = [mpmath.mpf(c.numerator) / c.denominator / (mpmath.mpf(lead.numerator) / lead.denominator)
                 for c in q]
        roots = mpmath.polyroots(list(reversed(monic)), maxsteps=400, extraprec=2 * bits)
        thr = mpmath.mpf(2) ** (-bits // 2)
        reals = sorted((mpmath.re(r) for r in roots if abs(mpmath.im(r)) <= thr), reverse=True)
        uppers = sorted((r for r in roots if mpmath.im(r) > thr), key=lambda z: (-mpmath.re(z), mpmath.im(z)))
        pieces = [RealFactor((-r, mpmath.mpf(1)), False, group) for r in reals]
        pieces += [RealFactor((abs(z) ** 2, -2 * mpmath.re(z), mpmath.mpf(1)), False, group) for z in uppers]
        if sum(p.degree for p in pieces) != len(q) - 1:
            return pieces, float("inf")
        got, _ = product(pieces)
        res = max(abs(x - y) for x, y in zip(got, monic))
        return pieces, float(res)


def factor_real(f: Poly, precision: int = 53, tol: float = 1e-9) -> RealFactorization:
    """Factor f = scale * prod(factors) over the reals.

    `precision` is the starting bit precision for the numeric splitting;
    it is escalated along 53, 128, 256 bits as needed.
    """
    if f.degree < 1:
        raise MalformedInput("polynomial must have degree at least 1")
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(f.coeffs))
    _, parts = sympy.factor_list(expr, x, domain="QQ")
    parts = [(sympy.Poly(p, x).all_coeffs()[::-1], k) for p, k in parts]
    parts = [([Fraction(int(c.p), int(c.q)) for c in cs], k) for cs, k in parts]
    # deterministic order: by degree then coefficients
    parts.sort(key=lambda t: (len(t[0]), [c / t[0][-1] for c in t[0]]))

    factors: list[tuple[RealFactor, int]] = []
    groups: list[tuple[int, int]] = []
    ladder = [b for b in PRECISION_LADDER if b >= precision] or [precision]
    for g, (cs, k) in enumerate(parts):
        monic = tuple(c / cs[-1] for c in cs)
        groups.append((len(cs) - 1, k))
        deg = len(cs) - 1
        if deg == 1 or (deg == 2 and monic[1] ** 2 - 4 * monic[0] < 0):
            factors.append((RealFactor(monic, True, g), k))
            continue
        for bits in ladder:
            pieces, res = _split_numeric(cs, g, bits)
            if res <= tol * 1e-3:
                break
        else:
            if res > tol:
                raise PrecisionExhausted(f"residual {res:.3e} exceeds tolerance at {ladder[-1]} bits")
        factors.extend((p, k) for p in pieces)

    scale = f.coeffs[-1]
    with mpmath.workprec(PRECISION_LADDER[-1]):
        got, _ = product([p for p, k in factors for _ in range(k)])
        got = [c * (mpmath.mpf(scale.numerator) / scale.denominator) for c in got]
        target = [mpmath.mpf(c.numerator) / c.denominator for c in f.coeffs]
        residual = float(max(abs(a - b) for a, b in zip(got, target)))
    if residual > tol:
        raise PrecisionExhausted(f"residual {residual:.3e} exceeds tolerance")
    return RealFactorization(tuple(factors), scale, residual, tuple(groups))
