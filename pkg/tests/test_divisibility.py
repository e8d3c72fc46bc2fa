import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divisikit.dist import FiniteDistribution, Poly, convolve_power, normalize_distribution, uniform
from divisikit.divisibility import (closest_divisible, divisibility_eps, is_n_divisible, nth_root_exact,
                                    weak_divisibility)
from divisikit.errors import DegreeNotDivisible, InvalidEpsilon
from divisikit.sweeps import grid_value, is_nth_power_oracle

from conftest import pmfs

HALF = FiniteDistribution.of(F(1, 2), F(1, 2))
SQUARE = FiniteDistribution.of(F(1, 4), F(1, 2), F(1, 4))


def test_nth_root_examples():
    assert nth_root_exact(Poly(SQUARE.probs), 2).equivalent(Poly.of(1, 1))
    assert nth_root_exact(Poly.of(F(1, 8), F(3, 8), F(3, 8), F(1, 8)), 3).equivalent(Poly.of(1, 1))
    with pytest.raises(DegreeNotDivisible):
        nth_root_exact(Poly(uniform(12).probs), 2)
    assert nth_root_exact(Poly(uniform(13).probs), 2) is None
    assert nth_root_exact(Poly.of(F(1, 2), 0, F(1, 2)), 2) is None


def test_is_n_divisible_examples():
    v = is_n_divisible(SQUARE, 2)
    assert v.answer and v.witness == HALF
    assert not is_n_divisible(uniform(12), 2).answer
    assert not is_n_divisible(SQUARE, 3).answer


def test_constant_is_divisible():
    v = is_n_divisible(FiniteDistribution.of(1), 7)
    assert v.answer and v.witness == FiniteDistribution.of(1)


def test_eps_examples():
    d = normalize_distribution(["0.26", "0.50", "0.24"])[0]
    assert divisibility_eps(d, 2, F(3, 100)).answer
    assert not divisibility_eps(uniform(3), 2, F(1, 100)).answer
    for raw in ([1, 2, 3], [5, 0, 0, 1], [1]):
        assert divisibility_eps(normalize_distribution(raw)[0], 2, F(101, 100)).answer
    with pytest.raises(InvalidEpsilon):
        divisibility_eps(d, 2, 0)


def test_eps_examples_match_grid_oracle():
    # frozen from the step-1e-3 grid oracle
    assert grid_value(normalize_distribution(["0.26", "0.50", "0.24"])[0].probs) < 0.03
    assert grid_value(uniform(3).probs) > 0.1


def test_eps_witness_is_within_eps():
    d = normalize_distribution([3, 5, 2, 1, 1])[0]
    v = divisibility_eps(d, 2, F(1, 10))
    assert v.answer
    sq = convolve_power(v.witness, 2).probs
    padded = list(d.probs) + [F(0)] * (len(sq) - len(d.probs))
    assert max(abs(a - b) for a, b in zip(sq, padded)) < F(1, 10)


def test_weak_examples():
    assert weak_divisibility(SQUARE, 2, F(1, 10**6))
    assert not weak_divisibility(uniform(3), 2, F(1, 1000))


def test_closest_examples():
    assert closest_divisible(SQUARE, 2, F(1, 1000)).epsilon_star == 0
    res = closest_divisible(uniform(3), 2, F(1, 1000))
    assert 0 < res.epsilon_star < F(1, 2)
    assert res.epsilon_star - res.lower <= F(1, 1000)
    # grid oracle value 0.154808... lies in the bracket
    assert res.lower <= grid_value(uniform(3).probs) <= res.epsilon_star
    assert (res.lower, res.epsilon_star) == (F(79, 512), F(159, 1024))


@given(pmfs(max_len=6, top=5), st.sampled_from([2, 3]))
def test_completeness_and_soundness(raw, n):
    g = normalize_distribution(raw)[0]
    d = convolve_power(g, n)
    v = is_n_divisible(d, n)
    assert v.answer and v.witness == g
    assert convolve_power(v.witness, n) == d
    assert is_n_divisible(d, n).witness == v.witness


@given(pmfs(max_len=9), st.sampled_from([2, 3, 5]))
def test_verdict_matches_sqf_oracle(raw, n):
    d = normalize_distribution(raw)[0]
    assert is_n_divisible(d, n).answer == is_nth_power_oracle(d, n)


@given(pmfs(max_len=9), st.integers(2, 6))
def test_width_rule(raw, n):
    d = normalize_distribution(raw)[0]
    if d.width % n:
        assert not is_n_divisible(d, n).answer
        with pytest.raises(DegreeNotDivisible):
            nth_root_exact(Poly(d.probs), n)


@given(pmfs(max_len=4, top=6))
def test_eps_monotone(raw):
    d = normalize_distribution(raw)[0]
    answers = [divisibility_eps(d, 2, e).answer for e in (F(1, 100), F(1, 20), F(1, 5), F(1, 2))]
    assert answers == sorted(answers)


@given(pmfs(max_len=3, top=6), st.sampled_from([F(1, 10**6), F(1, 1000), F(1, 10)]))
def test_eps_on_exact_squares(raw, eps):
    d = convolve_power(normalize_distribution(raw)[0], 2)
    assert divisibility_eps(d, 2, eps).answer


def test_uniform_dice_small():
    for k in range(2, 13):
        for n in range(2, 13):
            assert not is_n_divisible(uniform(k), n).answer


def test_random_powers_with_fixed_seed():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.choice((2, 3, 5))
        g = normalize_distribution([rng.randint(1, 9) for _ in range(rng.randint(1, 8))])[0]
        assert is_n_divisible(convolve_power(g, n), n).witness == g
