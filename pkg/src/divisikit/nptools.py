"""Subset sum and partition instances, brute-force oracles and reductions.

For a subset T of S write D(T) = sum(T) - sum(S \\ T). The variants are

* plain:     T a proper subset of S with |D(T)| < l
* even:      |T| = |S|/2 and |D(T)| < l
* m:         |T| = m, T proper, |D(T)| < l
* signed_m:  |T| = m and x < D(T) < y

Witnesses are index tuples; the oracles return the lexicographically
smallest accepted one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import DegenerateCardinality, InstanceTooLarge, MalformedInput, ShiftOnPlainVariant
from .rational import common_denominator, to_fraction

VARIANTS = ("plain", "even", "m", "signed_m")
DEFAULT_CAP = 24


@dataclass(frozen=True)
class SubsetSumInstance:
    elements: tuple[Fraction, ...]
    bound: Fraction = Fraction(0)
    variant: str = "plain"
    m: Optional[int] = None
    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(to_fraction(e) for e in self.elements))
        object.__setattr__(self, "bound", to_fraction(self.bound))
        if self.variant not in VARIANTS:
            raise MalformedInput(f"unknown variant {self.variant!r}")
        if self.variant == "even" and len(self.elements) % 2:
            raise MalformedInput("even variant needs an even number of elements")
        if self.variant in ("m", "signed_m") and self.m is None:
            raise MalformedInput("cardinality m required")
        if self.variant == "signed_m":
            if self.x is None or self.y is None:
                raise MalformedInput("signed variant needs a window x <= y")
            object.__setattr__(self, "x", to_fraction(self.x))
            object.__setattr__(self, "y", to_fraction(self.y))
            if self.x > self.y:
                raise MalformedInput("signed window needs x <= y")

    @property
    def total(self) -> Fraction:
        return sum(self.elements, Fraction(0))


@dataclass(frozen=True)
class PartitionInstance:
    elements: tuple[Fraction, ...]

    def __post_init__(self):
        els = tuple(to_fraction(e) for e in self.elements)
        if any(e <= 0 for e in els):
            raise MalformedInput("partition elements must be positive")
        object.__setattr__(self, "elements", els)


@dataclass(frozen=True)
class SubsetVerdict:
    answer: bool
    witness: Optional[tuple[int, ...]] = None

    def witness_values(self, elements: Sequence[Fraction]) -> Optional[list[Fraction]]:
        return None if self.witness is None else [elements[i] for i in self.witness]


def _lex_subsets(n: int) -> Iterator[tuple[int, ...]]:
    """All nonempty index tuples in lexicographic order."""
    stack = [(i,) for i in reversed(range(n))]
    while stack:
        t = stack.pop()
        yield t
        stack.extend(t + (j,) for j in reversed(range(t[-1] + 1, n)))


def _scaled(values: Sequence[Fraction]) -> tuple[list[int], int]:
    q = common_denominator(values)
    return [int(v * q) for v in values], q


def difference(elements: Sequence[Fraction], subset: Sequence[int]) -> Fraction:
    inside = sum((elements[i] for i in subset), Fraction(0))
    return 2 * inside - sum(elements, Fraction(0))


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise InstanceTooLarge(f"{n} elements exceed the brute-force cap {cap}")


def accepts(inst: SubsetSumInstance, variant: str, subset: Sequence[int], include_empty: bool = False) -> bool:
    """Does `subset` satisfy the defining inequality of `variant`? Exact."""
    n, k = len(inst.elements), len(subset)
    d = difference(inst.elements, subset)
    if variant == "plain":
        return k < n and (k > 0 or include_empty) and abs(d) < inst.bound
    if variant == "even":
        return 2 * k == n and k < n and abs(d) < inst.bound
    if variant == "m":
        return k == inst.m and k < n and (k > 0 or include_empty) and abs(d) < inst.bound
    if variant == "signed_m":
        return k == inst.m and inst.x < d < inst.y
    raise MalformedInput(f"unknown variant {variant!r}")


def solve_subset_variant(inst: SubsetSumInstance, variant: Optional[str] = None, *,
                         include_empty: bool = False, cap: int = DEFAULT_CAP) -> SubsetVerdict:
    variant = variant or inst.variant
    n = len(inst.elements)
    _check_cap(n, cap)
    ints, q = _scaled(list(inst.elements) + [inst.bound] +
                      ([inst.x, inst.y] if variant == "signed_m" else []))
    s, total, bound = ints[:n], sum(ints[:n]), ints[n]

    def ok(subset_sum: int, k: int) -> bool:
        d = 2 * subset_sum - total
        if variant == "signed_m":
            return ints[n + 1] < d < ints[n + 2]
        return abs(d) < bound

    if variant == "plain":
        if include_empty and n > 0 and ok(0, 0):
            return SubsetVerdict(True, ())
        for t in _lex_subsets(n):
            if len(t) < n and ok(sum(s[i] for i in t), len(t)):
                return SubsetVerdict(True, t)
        return SubsetVerdict(False)

    if variant == "even":
        if n % 2:
            raise MalformedInput("even variant needs an even number of elements")
        k = n // 2
    else:
        k = inst.m
        if k is None:
            raise MalformedInput("cardinality m required")
    if variant == "m":
        if k < 0 or k >= n or (k == 0 and not include_empty):
            return SubsetVerdict(False)
    elif variant == "even":
        if k == 0:
            return SubsetVerdict(False)
    elif k < 0 or k > n:
        return SubsetVerdict(False)
    for t in itertools.combinations(range(n), k):
        if ok(sum(s[i] for i in t), k):
            return SubsetVerdict(True, t)
    return SubsetVerdict(False)


def partition_oracle(p: PartitionInstance, *, cap: int = DEFAULT_CAP) -> SubsetVerdict:
    n = len(p.elements)
    _check_cap(n, cap)
    s, _ = _scaled(p.elements)
    total = sum(s)
    for t in _lex_subsets(n):
        if len(t) < n and 2 * sum(s[i] for i in t) == total:
            return SubsetVerdict(True, t)
    return SubsetVerdict(False)


# reductions

def rescale_instance(s: SubsetSumInstance, a, c=0) -> SubsetSumInstance:
    """Map every element to a*s + c and the bound to |a|*l.

    A nonzero shift is only verdict preserving when every split has
    equal cardinality, that is for the even variant.
    """
    a, c = to_fraction(a), to_fraction(c)
    if a == 0:
        raise MalformedInput("scale must be nonzero")
    if c != 0 and s.variant != "even":
        raise ShiftOnPlainVariant("an affine shift needs the even variant")
    x, y = s.x, s.y
    if s.variant == "signed_m":
        x, y = sorted((a * s.x, a * s.y))
    return replace(s, elements=tuple(a * e + c for e in s.elements), bound=abs(a) * s.bound, x=x, y=y)


def pad_to_even(s: SubsetSumInstance) -> SubsetSumInstance:
    """Append |S| zeros and switch to the even variant.

    The even verdict of the result equals the plain verdict of s when
    the empty subset is admitted (it is the complement of S itself).
    """
    if s.variant != "plain":
        raise MalformedInput("pad_to_even expects a plain instance")
    return SubsetSumInstance(s.elements + (Fraction(0),) * len(s.elements), s.bound, "even")


def partition_to_subset_sum(p: PartitionInstance) -> SubsetSumInstance:
    """Plain subset sum instance with bound equal to its own total.

    With Q the common denominator of the elements and eta = 1/(4Q) the
    instance is S plus two copies of -sum(S)/2 + eta, with bound 2*eta.
    A split has |D| below the total iff both sides have positive sum,
    which happens iff S has an equal-sum partition.
    """
    if not p.elements:
        raise MalformedInput("empty partition instance")
    total = sum(p.elements, Fraction(0))
    eta = Fraction(1, 4 * common_denominator(p.elements))
    extra = -total / 2 + eta
    return SubsetSumInstance(p.elements + (extra, extra), 2 * eta, "plain")


def interval_partition(l, a) -> list[tuple[Fraction, Fraction]]:
    """Cells of width 2a covering (-l-2a, l+2a); the inner ones tile (-l, l)."""
    l, a = to_fraction(l), to_fraction(a)
    if l <= 0 or a <= 0:
        raise MalformedInput("l and a must be positive")
    k = l / a
    if k.denominator != 1:
        raise MalformedInput("l must be an integer multiple of a")
    n_cells = int(k) + 2
    start = -l - 2 * a
    return [(start + 2 * a * i, start + 2 * a * (i + 1)) for i in range(n_cells)]


@dataclass(frozen=True)
class MProgram:
    """Disjunction of m-constrained queries on shifted instances."""

    queries: tuple[SubsetSumInstance, ...]
    cells: tuple[tuple[Fraction, Fraction], ...]
    half_width: Fraction
    formula_a: Optional[Fraction] = None


MAX_CELLS = 15


def subset_sum_m_program(s: SubsetSumInstance, m: int) -> MProgram:
    """Rewrite an m-constrained instance as a disjunction over cells.

    The range of admissible differences is tiled by an odd number of
    cells of half width h. For the cell centred at x the instance is
    shifted by c = -x/(2m - |S|), so a size-m subset has shifted
    difference D - x, and the cell is queried as an m-constrained
    instance with bound h. Differences are multiples of 1/Q, the cell
    boundaries are not, so no subset falls between cells.
    """
    n = len(s.elements)
    if 2 * m == n:
        raise DegenerateCardinality("2m = |S|: use the even variant")
    l = s.bound
    total = s.total
    if m <= 0 or m >= n or l <= 0:
        return MProgram((), (), Fraction(0))
    formula = 2 * (n * l + 2 * m * total - n * total) / (2 * m - n)
    q = common_denominator(list(s.elements) + [l])
    inner = l - Fraction(1, 2 * q)
    if formula == 0:
        k = 1
    else:
        k = max(1, min(MAX_CELLS, round(inner / abs(formula))))
        if k % 2 == 0:
            k += 1 if k < MAX_CELLS else -1
    h = inner / k
    cells = interval_partition(inner, h)[1:-1]
    queries = []
    for lo, hi in cells:
        centre = (lo + hi) / 2
        c = -centre / (2 * m - n)
        queries.append(SubsetSumInstance(tuple(e + c for e in s.elements), h, "m", m=m))
    return MProgram(tuple(queries), tuple(cells), h, formula)


def evaluate_m_program(program: MProgram, *, cap: int = DEFAULT_CAP) -> bool:
    return any(solve_subset_variant(q, "m", cap=cap).answer for q in program.queries)
