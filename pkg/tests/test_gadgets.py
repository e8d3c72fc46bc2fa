import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divisikit.decomposability import decompose, decompose_eps, decompose_even
from divisikit.dist import Poly
from divisikit.errors import DegenerateGadget, MalformedInput
from divisikit.gadgets import (GadgetParams, certified_eps, dominance_holds, encode_even_subset_sum,
                               encode_subset_sum_eps, even_gadget, gadget_poly, partition_gadget)
from divisikit.nptools import PartitionInstance, SubsetSumInstance, partition_oracle, solve_subset_variant


def even(els, l):
    return SubsetSumInstance(tuple(map(F, els)), F(l), "even")


@given(st.lists(st.builds(F, st.integers(-9, 9), st.integers(1, 9)), max_size=6))
def test_gadget_poly_is_product_of_quadratics(b):
    expected = Poly.of(1)
    for x in b:
        expected = expected * Poly.of(1, x, 1)
    assert gadget_poly(b) == expected


def test_encoder_examples():
    d = encode_even_subset_sum(even([1, 3], 3))
    assert d.width == 4
    assert (decompose_even(d) is not None) == solve_subset_variant(even([1, 3], 3)).answer is True
    d = encode_even_subset_sum(even([1, 1], F(1, 1000)))
    assert decompose_even(d) is not None and solve_subset_variant(even([1, 1], F(1, 1000))).answer


def test_encoder_guards():
    with pytest.raises(DegenerateGadget):
        even_gadget(even([1, 2], 0))
    with pytest.raises(MalformedInput):
        even_gadget(SubsetSumInstance((F(1), F(2), F(3)), F(1)))


def test_bi_sum_positive():
    g = even_gadget(even([1, 3, -2, 4], 2))
    assert sum(g.b) > 0 and all(abs(x) < 2 for x in g.b)


def test_dominance_monotone_in_delta():
    assert dominance_holds(4, F(1, 8), F(1, 100))
    assert not dominance_holds(4, F(1, 8), F(3, 2))


def test_partition_examples():
    yes = PartitionInstance((F(1), F(1), F(2)))
    no = PartitionInstance((F(1), F(1), F(3)))
    assert decompose(encode_subset_sum_eps(yes)) is not None
    assert decompose_eps(encode_subset_sum_eps(no), F(1, 10**4)) is None
    assert 0 < certified_eps(partition_gadget(no)) < F(1, 10**4)


def test_even_encoder_random():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.choice((2, 4, 6))
        s = even([F(rng.randint(-20, 20), 4) for _ in range(n)], F(rng.randint(1, 20), 4))
        assert (decompose_even(encode_even_subset_sum(s)) is not None) == solve_subset_variant(s).answer


@settings(max_examples=30)
@given(st.lists(st.integers(1, 9), min_size=2, max_size=5))
def test_partition_encoder_at_certified_eps(els):
    p = PartitionInstance(tuple(map(F, els)))
    g = partition_gadget(p)
    found = decompose_eps(g.dist, certified_eps(g)) is not None
    assert found == partition_oracle(p).answer


@settings(max_examples=20)
@given(st.floats(0.01, 1.0))
def test_gadget_constant_c(c):
    s = even([1, 3, 2, 2], 1)
    d = encode_even_subset_sum(s, GadgetParams(F(c).limit_denominator(100)))
    assert (decompose_even(d) is not None) == solve_subset_variant(s).answer
