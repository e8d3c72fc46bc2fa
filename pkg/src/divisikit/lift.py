"""Exact lift of a nonnegativity question to a stochasticity question.

For a d x d matrix M and scale a the lift is the 3d x 3d matrix

    Q = (a/d) A A^T (x) M + (1/d) (B B^T + C C^T) (x) J

with J the all-ones matrix and A, B, C the mutually orthogonal vectors
below. Rows and columns of Q sum to 1 and Q is nonnegative iff M is.
Orthogonality makes Q^2 collapse to a closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedInput, NoPositiveEntry
from .matrix import RationalMatrix
from .rational import to_fraction

F = Fraction
A_VEC = (F(1), F(-5, 7), F(-2, 7))
B_VEC = (F(1, 6), F(1, 2), F(-2, 3))
C_OUTER = ((F(1, 3),) * 3,) * 3  # C = -(1,1,1)/sqrt(3) is irrational, C C^T is not
A_NORM2 = F(78, 49)
B_NORM2 = F(13, 18)
SCALE_LIMIT = F(43, 81)
DEFAULT_RATIO = F(1, 2)


def _outer(u, v):
    return [[x * y for y in v] for x in u]


AAT = _outer(A_VEC, A_VEC)
BBT = _outer(B_VEC, B_VEC)


@dataclass(frozen=True)
class LiftResult:
    lifted: RationalMatrix
    scale: Fraction


def lift_scale(m: RationalMatrix, ratio=DEFAULT_RATIO, scale=None) -> Fraction:
    """a with a * max(M) = ratio, unless an explicit scale is given."""
    if scale is not None:
        scale = to_fraction(scale)
        if scale <= 0 or scale * m.max_entry() > SCALE_LIMIT:
            raise MalformedInput(f"scale must be positive with scale * max(M) <= {SCALE_LIMIT}")
        return scale
    ratio = to_fraction(ratio)
    if not 0 < ratio <= SCALE_LIMIT:
        raise MalformedInput(f"ratio must lie in (0, {SCALE_LIMIT}]")
    top = m.max_entry()
    if top <= 0:
        raise NoPositiveEntry("matrix has no positive entry")
    return ratio / top


def _assemble(m_rows, a_coef, blocks_m, blocks_j, d: int) -> RationalMatrix:
    rows = []
    for r in range(3):
        for i in range(d):
            row = []
            for c in range(3):
                am, bj = a_coef * blocks_m[r][c], blocks_j[r][c]
                row.extend(am * m_rows[i][j] + bj for j in range(d))
            rows.append(tuple(row))
    return RationalMatrix(tuple(rows))


def lift_nonneg_to_stochastic(m: RationalMatrix, ratio=DEFAULT_RATIO, scale=None) -> LiftResult:
    a = lift_scale(m, ratio, scale)
    d = m.dim
    j = [[(BBT[r][c] + C_OUTER[r][c]) / d for c in range(3)] for r in range(3)]
    return LiftResult(_assemble(m.rows, a / d, AAT, j, d), a)


def lifted_square(m: RationalMatrix, ratio=DEFAULT_RATIO, scale=None) -> RationalMatrix:
    """Q^2 from the closed form, without multiplying Q by itself."""
    a = lift_scale(m, ratio, scale)
    d = m.dim
    m2 = m @ m
    j = [[(B_NORM2 * BBT[r][c] + C_OUTER[r][c]) / d for c in range(3)] for r in range(3)]
    return _assemble(m2.rows, a * a * A_NORM2 / (d * d), AAT, j, d)
