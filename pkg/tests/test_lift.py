import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisikit.errors import MalformedInput, NoPositiveEntry
from divisikit.lift import (A_VEC, B_VEC, C_OUTER, SCALE_LIMIT, lift_nonneg_to_stochastic, lift_scale,
                            lifted_square)
from divisikit.matrix import RationalMatrix, classify_matrix
from divisikit.sweeps import random_rational_matrix


def test_one_by_one_frozen():
    res = lift_nonneg_to_stochastic(RationalMatrix.from_rows([[1]]))
    assert res.scale == F(1, 2)
    expected = RationalMatrix.from_rows([[1519, 105, 140], [105, 1479, 180], [140, 180, 1444]]).scale(F(1, 1764))
    assert res.lifted == expected


def test_block_formula():
    m = RationalMatrix.from_rows([[F(1, 3), 2], [0, 1]])
    res = lift_nonneg_to_stochastic(m)
    a, d = res.scale, 2
    am = m.scale(a)

    def block(c0, c1):
        return [[(c0 + c1 * am.rows[i][j]) / (1764 * d) for j in range(d)] for i in range(d)]

    blocks = [[block(637, 1764), block(735, -1260), block(392, -504)],
              [block(735, -1260), block(1029, 900), block(0, 360)],
              [block(392, -504), block(0, 360), block(1372, 144)]]
    for bi in range(3):
        for bj in range(3):
            for i in range(d):
                for j in range(d):
                    assert res.lifted.rows[bi * d + i][bj * d + j] == blocks[bi][bj][i][j]


def test_vectors_orthogonal():
    ones = (1, 1, 1)
    dots = [sum(x * y for x, y in zip(u, v)) for u, v in ((A_VEC, B_VEC), (A_VEC, ones), (B_VEC, ones))]
    assert dots == [0, 0, 0]
    assert all(x == F(1, 3) for row in C_OUTER for x in row)


def test_negative_entry_survives():
    m = RationalMatrix.from_rows([[1, -1], [0, 2]])
    q = lift_nonneg_to_stochastic(m).lifted
    assert min(q.entries()) < 0


def test_scale_guards():
    with pytest.raises(NoPositiveEntry):
        lift_scale(RationalMatrix.from_rows([[-1]]))
    with pytest.raises(MalformedInput):
        lift_scale(RationalMatrix.from_rows([[1]]), scale=SCALE_LIMIT + 1)
    assert lift_scale(RationalMatrix.from_rows([[2]]), scale=SCALE_LIMIT / 2) == SCALE_LIMIT / 2


@given(st.integers(0, 10**6), st.integers(1, 4), st.booleans())
def test_lift_identities(seed, d, signed):
    m = random_rational_matrix(random.Random(seed), d, -3 if signed else 0)
    if m.max_entry() <= 0:
        return
    q = lift_nonneg_to_stochastic(m).lifted
    assert all(s == 1 for s in q.row_sums()) and all(s == 1 for s in q.col_sums())
    assert classify_matrix(q).stochastic == classify_matrix(m).nonnegative
    assert q @ q == lifted_square(m)
