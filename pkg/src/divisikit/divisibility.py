"""Exact and approximate n-divisibility of finite distributions.

A distribution is n-divisible when its characteristic polynomial is the
n-th power of a polynomial with nonnegative coefficients. The exact test
recovers the unique candidate root with rational arithmetic. The
epsilon variant searches for a pmf g whose n-th power lies within
epsilon of the input in the max norm, using interval propagation,
local optimisation and a verified branch and bound.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .dist import FiniteDistribution, Poly, from_char_poly, normalize_distribution
from .errors import DegreeNotDivisible, InvalidEpsilon, MalformedInput, NegativeCoefficient
from .intervals import Interval, interval_power
from .rational import to_fraction


@dataclass(frozen=True)
class IntervalBox:
    """Enclosure of the root coefficients a_0, ..., a_m."""

    intervals: tuple[Interval, ...]

    @property
    def empty(self) -> bool:
        return any(iv.empty for iv in self.intervals)

    def as_lists(self) -> list[list[float]]:
        return [[iv.lo, iv.hi] for iv in self.intervals]


@dataclass(frozen=True)
class DivisibilityVerdict:
    answer: bool
    witness: Optional[FiniteDistribution] = None
    box: Optional[IntervalBox] = None
    deviation: Optional[Fraction] = None
    # False when a "no" comes from an exhausted search budget instead of a proof
    certified: bool = True
    # offset of the witness support when its leading mass is zero
    shift: int = 0


# exact n-th roots

def nth_root_exact(f: Poly, n: int) -> Optional[Poly]:
    """Return g >= 0 with g**n equivalent to f, or None.

    The root is built from the top coefficient down: after dividing by the
    leading coefficient, the reversed polynomial is a power series with
    constant term 1 and its n-th root follows from a rational recurrence.
    """
    if n < 1:
        raise MalformedInput("n must be positive")
    if f.is_zero():
        raise MalformedInput("zero polynomial")
    if not f.is_nonnegative():
        raise NegativeCoefficient("polynomial has a negative coefficient")
    N = f.degree
    if N % n:
        raise DegreeNotDivisible(f"{n} does not divide degree {N}")
    m = N // n
    lead = f.coeffs[-1]
    # B(y) = y^N f(1/y) / lead, so B_0 = 1
    b = [c / lead for c in reversed(f.coeffs)]
    alpha = Fraction(1, n)
    a = [Fraction(1)]
    for k in range(1, m + 1):
        s = sum((((alpha + 1) * j - k) * b[j] * a[k - j] for j in range(1, k + 1)), Fraction(0))
        a.append(s / k)
    g = Poly(tuple(reversed(a)))
    if not g.is_nonnegative():
        return None
    if not (g ** n).equivalent(f):
        return None
    return g.canonical()


def is_n_divisible(d: FiniteDistribution, n: int) -> DivisibilityVerdict:
    if n < 2:
        raise MalformedInput("n must be at least 2")
    w = d.width
    if w % n:
        return DivisibilityVerdict(False)
    if w == 0:
        return DivisibilityVerdict(True, d)
    g = nth_root_exact(Poly(d.probs), n)
    if g is None:
        return DivisibilityVerdict(False)
    return DivisibilityVerdict(True, from_char_poly(g))


# epsilon variant

def _padded(d: FiniteDistribution, n: int) -> tuple[int, list[Fraction]]:
    m = -(-d.width // n)
    p = list(d.probs) + [Fraction(0)] * (n * m - d.width)
    return m, p


def _enclose(q: Fraction) -> Interval:
    x = float(q)
    return Interval(math.nextafter(x, -math.inf), math.nextafter(x, math.inf))


def _deviation_exact(a: list[Fraction], n: int, p: list[Fraction]) -> Fraction:
    c = (Poly(tuple(a)) ** n).coeffs
    c = list(c) + [Fraction(0)] * (len(p) - len(c))
    return max(abs(x - y) for x, y in zip(c, p))


def _deviation_float(a: np.ndarray, n: int, p: np.ndarray) -> float:
    c = a
    for _ in range(n - 1):
        c = np.convolve(c, a)
    return float(np.max(np.abs(c - p)))


def _as_pmf(a: np.ndarray) -> Optional[list[Fraction]]:
    a = np.clip(np.asarray(a, dtype=float), 0.0, None)
    s = float(a.sum())
    if not math.isfinite(s) or s <= 0:
        return None
    # prefer short rationals; exact binary values are the fallback
    q = [Fraction(float(x)).limit_denominator(10**9) for x in a]
    total = sum(q)
    return [x / total for x in q]


class _Search:
    """Shared state of one epsilon-divisibility query."""

    def __init__(self, d: FiniteDistribution, n: int, eps: Fraction):
        self.n = n
        self.eps = eps
        self.m, self.p = _padded(d, n)
        self.pf = np.array([float(x) for x in self.p])
        self.windows = [Interval(float(x - eps), float(x + eps)) for x in self.p]
        self.windows = [Interval(math.nextafter(w.lo, -math.inf), math.nextafter(w.hi, math.inf))
                        for w in self.windows]
        self.best: Optional[tuple[Fraction, list[Fraction]]] = None

    def try_witness(self, a) -> bool:
        q = _as_pmf(a)
        if q is None:
            return False
        if _deviation_float(np.array([float(x) for x in q]), self.n, self.pf) > 2 * float(self.eps) + 1e-12:
            return False
        dev = _deviation_exact(q, self.n, self.p)
        if self.best is None or dev < self.best[0]:
            self.best = (dev, q)
        return dev < self.eps

    # interval reasoning

    def initial_box(self) -> list[Interval]:
        n, p0 = self.n, self.p[0]
        lo = max(Fraction(0), p0 - self.eps)
        hi = min(Fraction(1), p0 + self.eps)
        i0 = Interval(math.nextafter(float(lo) ** (1.0 / n), -math.inf) if lo > 0 else 0.0,
                      min(1.0, math.nextafter(float(hi) ** (1.0 / n), math.inf)))
        return [i0] + [Interval(0.0, 1.0)] * self.m

    def contract(self, box: list[Interval]) -> list[Interval]:
        """Tighten a box with the simplex constraint and coefficient equations."""
        box = [iv.intersect(Interval(0.0, 1.0)) for iv in box]
        if any(iv.empty for iv in box):
            return box
        n = self.n
        for _ in range(2):
            # sum a_i = 1
            tot = Interval(0.0, 0.0)
            for iv in box:
                tot = tot + iv
            for i, iv in enumerate(box):
                rest = tot - iv
                box[i] = iv.intersect(Interval(1.0, 1.0) - Interval(rest.lo, rest.hi))
                if box[i].empty:
                    return box
            # coefficient k of g^n is n a_0^(n-1) a_k + h_k(a_0..a_{k-1})
            a0 = box[0]
            if a0.lo <= 0:
                continue
            lead = (a0 ** (n - 1)).scale(float(n))
            for k in range(1, self.m + 1):
                trunc = box[:k] + [Interval(0.0, 0.0)]
                hk = interval_power(trunc, n)[k]
                cand = (self.windows[k] - hk).divide_positive(lead)
                box[k] = box[k].intersect(cand)
                if box[k].empty:
                    return box
        return box

    def excluded(self, box: list[Interval]) -> bool:
        if any(iv.empty for iv in box):
            return True
        coeffs = interval_power(box, self.n)
        for c, w in zip(coeffs, self.windows):
            if c.hi < w.lo or c.lo > w.hi:
                return True
        return False

    def midpoint(self, box: list[Interval]) -> np.ndarray:
        a = np.array([iv.mid for iv in box[1:]])
        a0 = 1.0 - a.sum()
        if a0 < box[0].lo or a0 > box[0].hi:
            a0 = min(max(a0, box[0].lo), box[0].hi)
        return np.concatenate([[max(a0, 0.0)], a])

    # local optimisation of the max deviation

    def polish(self, starts) -> None:
        n, pf, m = self.n, self.pf, self.m

        def coeffs(a):
            c = a
            for _ in range(n - 1):
                c = np.convolve(c, a)
            return c

        cons = [
            {"type": "ineq", "fun": lambda x: x[-1] - (coeffs(x[:-1]) - pf)},
            {"type": "ineq", "fun": lambda x: x[-1] + (coeffs(x[:-1]) - pf)},
            {"type": "eq", "fun": lambda x: np.sum(x[:-1]) - 1.0},
        ]
        bounds = [(0.0, 1.0)] * (m + 1) + [(0.0, 2.0)]
        for a in starts:
            a = np.asarray(a, dtype=float)
            x0 = np.concatenate([a, [np.max(np.abs(coeffs(a) - pf))]])
            res = minimize(lambda x: x[-1], x0, method="SLSQP", bounds=bounds,
                           constraints=cons, options={"maxiter": 200, "ftol": 1e-14})
            if self.try_witness(res.x[:-1]):
                return

    def starts(self) -> list[np.ndarray]:
        m, n = self.m, self.n
        out = [np.full(m + 1, 1.0 / (m + 1))]
        # coefficientwise n-th root of the input pmf as a rough guess
        r = np.array([float(self.p[k * n]) for k in range(m + 1)]) ** (1.0 / n)
        if r.sum() > 0:
            out.append(r / r.sum())
        return out


def divisibility_eps(d: FiniteDistribution, n: int, eps, *, refine_depth: int = 20,
                     budget: int = 50000) -> DivisibilityVerdict:
    """Is there a pmf g with max|g^n - p| < eps?

    Intervals for a_0 and then a_1, ..., a_m are propagated from the
    coefficient equations. An empty interval proves "no". Otherwise
    candidate witnesses (box midpoints, bisections of I_0, local minimax
    solutions) are verified exactly, and a branch and bound over the box
    settles the remaining cases.
    """
    if n < 2:
        raise MalformedInput("n must be at least 2")
    eps = to_fraction(eps)
    if eps <= 0:
        raise InvalidEpsilon("epsilon must be positive")
    s = _Search(d, n, eps)

    def verdict(answer: bool, box, certified=True) -> DivisibilityVerdict:
        witness, dev, shift = None, None, 0
        if s.best is not None:
            dev = s.best[0]
            if answer:
                witness, shift = normalize_distribution(s.best[1])
        return DivisibilityVerdict(answer, witness, IntervalBox(tuple(box)), dev, certified, shift)

    if s.m == 0:
        s.try_witness(np.array([1.0]))
        return verdict(True, [Interval(1.0, 1.0)])

    box = s.contract(s.initial_box())
    if s.excluded(box):
        return verdict(False, box)
    if s.try_witness(s.midpoint(box)):
        return verdict(True, box)

    # bisect I_0 and re-propagate
    frontier = [box]
    for _ in range(refine_depth):
        nxt = []
        for b in frontier:
            i0 = b[0]
            for half in (Interval(i0.lo, i0.mid), Interval(i0.mid, i0.hi)):
                c = s.contract([half] + b[1:])
                if s.excluded(c):
                    continue
                if s.try_witness(s.midpoint(c)):
                    return verdict(True, box)
                nxt.append(c)
        if not nxt:
            return verdict(False, box)
        frontier = nxt[:8]

    s.polish(s.starts() + [s.midpoint(b) for b in frontier[:2]])
    if s.best is not None and s.best[0] < eps:
        return verdict(True, box)

    # verified branch and bound over a_1..a_m
    counter = 0
    heap = [(0.0, counter, box)]
    while heap:
        if counter >= budget:
            return verdict(False, box, certified=False)
        _, _, b = heapq.heappop(heap)
        widths = [iv.width for iv in b[1:]]
        k = 1 + int(np.argmax(widths))
        if widths[k - 1] < 1e-13:
            continue
        iv = b[k]
        for half in (Interval(iv.lo, iv.mid), Interval(iv.mid, iv.hi)):
            c = s.contract(b[:k] + [half] + b[k + 1:])
            if s.excluded(c):
                continue
            mid = s.midpoint(c)
            if s.try_witness(mid):
                return verdict(True, box)
            counter += 1
            heapq.heappush(heap, (_deviation_float(mid, n, s.pf), counter, c))
    return verdict(False, box)


def weak_divisibility(d: FiniteDistribution, n: int, eps) -> bool:
    return divisibility_eps(d, n, eps).answer


@dataclass(frozen=True)
class ClosestResult:
    witness: FiniteDistribution
    epsilon_star: Fraction
    lower: Fraction


def closest_divisible(d: FiniteDistribution, n: int, precision) -> ClosestResult:
    """Bracket the smallest epsilon for which d is epsilon-divisible.

    Bisection over dyadic epsilons in (0, 2]; the returned epsilon_star is
    the upper end of the final bracket, so it only decreases as the
    precision is refined.
    """
    precision = to_fraction(precision)
    if precision <= 0:
        raise InvalidEpsilon("precision must be positive")
    exact = is_n_divisible(d, n)
    if exact.answer:
        return ClosestResult(exact.witness, Fraction(0), Fraction(0))
    lo, hi = Fraction(0), Fraction(2)
    best = divisibility_eps(d, n, hi)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        v = divisibility_eps(d, n, mid)
        if v.answer:
            hi, best = mid, v
        else:
            lo = mid
    return ClosestResult(best.witness, hi, lo)
