"""Dense exact-rational square matrices and their classification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, MalformedInput
from .rational import to_fraction


@dataclass(frozen=True)
class RationalMatrix:
    """Square matrix of Fractions stored row-major as nested tuples."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise MalformedInput("matrix must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(tuple(tuple(to_fraction(x) for x in r) for r in rows))

    @classmethod
    def identity(cls, d: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)))

    @classmethod
    def zeros(cls, d: int) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list[Fraction]:
        return [x for r in self.rows for x in r]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        _check_dims(self, other)
        return RationalMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        _check_dims(self, other)
        return RationalMatrix(tuple(tuple(a - b for a, b in zip(r, s))
                                    for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "RationalMatrix":
        c = to_fraction(c)
        return RationalMatrix(tuple(tuple(c * x for x in r) for r in self.rows))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        _check_dims(self, other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append(tuple(sum((x * c[k] for k, x in nz), Fraction(0)) for c in cols))
        return RationalMatrix(tuple(out))

    def row_sums(self) -> list[Fraction]:
        return [sum(r, Fraction(0)) for r in self.rows]

    def col_sums(self) -> list[Fraction]:
        return [sum(c, Fraction(0)) for c in zip(*self.rows)]

    def max_entry(self) -> Fraction:
        return max(self.entries())

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float)

    def to_object_array(self) -> np.ndarray:
        a = np.empty((self.dim, self.dim), dtype=object)
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                a[i, j] = x
        return a

    @classmethod
    def from_object_array(cls, a: np.ndarray) -> "RationalMatrix":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in a))


def _check_dims(a: RationalMatrix, b: RationalMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions {a.dim} and {b.dim} differ")


def kron(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Kronecker product of two (not necessarily square) nested lists."""
    ra, ca, rb, cb = len(a), len(a[0]), len(b), len(b[0])
    return [[a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb)]
            for i in range(ra * rb)]


@dataclass(frozen=True)
class MatrixClass:
    nonnegative: bool
    stochastic: bool
    doubly_stochastic: bool


def is_nonnegative(m: RationalMatrix) -> bool:
    return all(x >= 0 for x in m.entries())


def is_stochastic(m: RationalMatrix) -> bool:
    return is_nonnegative(m) and all(s == 1 for s in m.row_sums())


def classify_matrix(m: RationalMatrix) -> MatrixClass:
    nonneg = is_nonnegative(m)
    stoch = nonneg and all(s == 1 for s in m.row_sums())
    doubly = stoch and all(s == 1 for s in m.col_sums())
    return MatrixClass(nonneg, stoch, doubly)
