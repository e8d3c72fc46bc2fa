import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisikit.dist import (FiniteDistribution, NormSpec, Poly, convolve, eval_characteristic, from_char_poly,
                            normalize_distribution, poly_norm, to_char_poly, transition_matrix, uniform)
from divisikit.errors import AllZero, DegreeExceedsBound, MalformedInput, NegativeCoefficient, NegativeMass
from divisikit.matrix import RationalMatrix

from conftest import pmfs


def dist(*p):
    return FiniteDistribution.of(*p)


HALF = dist(F(1, 2), F(1, 2))
SQUARE = dist(F(1, 4), F(1, 2), F(1, 4))


@pytest.mark.parametrize("raw, probs, shift", [
    ([2, 1, 1], (F(1, 2), F(1, 4), F(1, 4)), 0),
    ([0, 1, 1], (F(1, 2), F(1, 2)), 1),
    ([3], (F(1),), 0),
    (["0.25", "1/2", "0.25"], (F(1, 4), F(1, 2), F(1, 4)), 0),
])
def test_normalize(raw, probs, shift):
    d, s = normalize_distribution(raw)
    assert d.probs == probs and s == shift


@pytest.mark.parametrize("raw, err", [([], MalformedInput), ([0, 0], AllZero), ([1, -1], NegativeMass),
                                      (["x"], MalformedInput)])
def test_normalize_rejects(raw, err):
    with pytest.raises(err):
        normalize_distribution(raw)


def test_char_poly_examples():
    assert to_char_poly(SQUARE).coeffs == SQUARE.probs
    assert from_char_poly(Poly.of(1, 1)) == HALF
    with pytest.raises(NegativeCoefficient):
        from_char_poly(Poly.of(1, -1))
    with pytest.raises(AllZero):
        from_char_poly(Poly.of(0))


def test_characteristic_examples():
    assert eval_characteristic(HALF, 0) == 1
    assert eval_characteristic(dist(1), 1.7) == 1
    assert abs(eval_characteristic(HALF, math.pi)) < 1e-15


def test_poly_norm_examples():
    f = to_char_poly(SQUARE)
    assert poly_norm(f, NormSpec(2)) == 0.5
    assert poly_norm(f, NormSpec(2, 1)) == 1
    assert poly_norm(Poly.of(1), NormSpec(3, 2)) == 1
    with pytest.raises(DegreeExceedsBound):
        poly_norm(f, NormSpec(1))
    with pytest.raises(MalformedInput):
        NormSpec(2, 3)


def test_convolve_examples():
    assert convolve(HALF, HALF) == SQUARE
    assert convolve(HALF, dist(F(1, 2), 0, F(1, 2))) == uniform(4)
    assert convolve(SQUARE, dist(1)) == SQUARE


def test_transition_matrix_examples():
    p = transition_matrix(HALF, 3)
    h = F(1, 2)
    assert p == RationalMatrix.from_rows([[h, h, 0], [0, h, h], [0, 0, h]])
    assert transition_matrix(dist(1), 2) == RationalMatrix.identity(2)
    p2 = p @ p
    assert p2.rows[0] == SQUARE.probs


@given(pmfs())
def test_char_poly_round_trip(raw):
    d, _ = normalize_distribution(raw)
    assert from_char_poly(to_char_poly(d)) == d


@given(pmfs(), st.integers(1, 7))
def test_scale_invariance(raw, k):
    assert normalize_distribution(raw)[0] == normalize_distribution([k * x for x in raw])[0]


@given(pmfs(), pmfs())
def test_convolution_is_poly_product(a, b):
    da, db = normalize_distribution(a)[0], normalize_distribution(b)[0]
    assert to_char_poly(convolve(da, db)).equivalent(to_char_poly(da) * to_char_poly(db))


@given(pmfs(), st.floats(-10, 10))
def test_characteristic_bounded(raw, omega):
    d, _ = normalize_distribution(raw)
    assert abs(eval_characteristic(d, omega)) <= 1 + 1e-12
    assert abs(eval_characteristic(d, 0) - 1) < 1e-12


@given(pmfs(max_len=5), st.integers(0, 3))
def test_transition_matrix_stochastic_and_toeplitz(raw, extra):
    d, _ = normalize_distribution(raw)
    size = d.width + 1 + extra
    p = transition_matrix(d, size)
    assert all(x >= 0 for x in p.entries())
    for i in range(size - 1):
        assert p.rows[i][i:-1] == p.rows[i + 1][i + 1:]
    # rows whose window fits inside the matrix carry the whole pmf
    for i in range(size - d.width):
        assert p.rows[i][i:i + d.width + 1] == d.probs and sum(p.rows[i]) == 1
