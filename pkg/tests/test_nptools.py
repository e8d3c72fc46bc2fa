from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from divisikit.errors import DegenerateCardinality, InstanceTooLarge, MalformedInput, ShiftOnPlainVariant
from divisikit.nptools import (PartitionInstance, SubsetSumInstance, accepts, difference, evaluate_m_program,
                               interval_partition, pad_to_even, partition_oracle, partition_to_subset_sum,
                               rescale_instance, solve_subset_variant, subset_sum_m_program)

from conftest import fractions


def inst(elements, bound, variant="plain", **kw):
    return SubsetSumInstance(tuple(F(e) for e in elements), F(bound), variant, **kw)


def test_solver_examples():
    v = solve_subset_variant(inst([1, 2, 3], F(1, 2)))
    assert v.answer and v.witness_values((1, 2, 3)) == [1, 2]
    assert not solve_subset_variant(inst([1, 2], F(1, 2))).answer
    v = solve_subset_variant(inst([1, 3], 3, "even"))
    assert v.answer and v.witness == (0,)


def test_partition_examples():
    v = partition_oracle(PartitionInstance(tuple(map(F, (3, 1, 1, 2, 2, 1)))))
    assert v.answer and 2 * sum(v.witness_values((3, 1, 1, 2, 2, 1))) == 10
    assert not partition_oracle(PartitionInstance((F(1), F(2)))).answer
    assert partition_oracle(PartitionInstance((F(1), F(1)))).answer


def test_rescale_examples():
    s = inst([1, 2, 3], 1)
    t = rescale_instance(s, 2)
    assert t.elements == (2, 4, 6) and t.bound == 2
    assert solve_subset_variant(s).answer == solve_subset_variant(t).answer
    e = inst([1, 3], 3, "even")
    t = rescale_instance(e, 1, 5)
    assert t.elements == (6, 8) and t.bound == 3
    assert solve_subset_variant(e).answer == solve_subset_variant(t).answer
    assert rescale_instance(s, 1, 0) == s
    with pytest.raises(MalformedInput):
        rescale_instance(s, 0)
    with pytest.raises(ShiftOnPlainVariant):
        rescale_instance(s, 1, 1)


def test_pad_examples():
    assert pad_to_even(inst([1, 2, 3], 1)).elements == (1, 2, 3, 0, 0, 0)
    assert pad_to_even(inst([], 1)).elements == ()


def test_partition_to_subset_sum_examples():
    for els, yes in (([1, 1, 2], True), ([1], False), ([1, 2], False)):
        p = PartitionInstance(tuple(map(F, els)))
        s = partition_to_subset_sum(p)
        assert s.elements[:len(els)] == p.elements
        assert partition_oracle(p).answer == yes == solve_subset_variant(s).answer


def test_interval_partition_examples():
    cells = interval_partition(1, F(1, 4))
    assert all(b - a == F(1, 2) for a, b in cells)
    assert cells[0][0] == F(-3, 2) and cells[-1][1] == F(3, 2)
    cells = interval_partition(1, 1)
    assert len(cells) == 3 and cells[1] == (-1, 1)


def test_m_program_examples():
    s = inst([1, 2, 3, 4], 1, "m", m=1)
    assert evaluate_m_program(subset_sum_m_program(s, 1)) == solve_subset_variant(s).answer
    with pytest.raises(DegenerateCardinality):
        subset_sum_m_program(inst([1, 2, 3, 4], 1, "m", m=2), 2)


def test_cap():
    with pytest.raises(InstanceTooLarge):
        solve_subset_variant(inst(range(30), 1), cap=24)


def elements(min_size=1, max_size=8):
    return st.lists(fractions(-10, 10, 2), min_size=min_size, max_size=max_size).map(tuple)


bounds = st.builds(F, st.integers(0, 24), st.just(2))


@given(elements(), bounds)
def test_witnesses_satisfy_definition(els, l):
    for variant, kw in (("plain", {}), ("m", {"m": max(1, len(els) // 2)})):
        s = SubsetSumInstance(els, l, variant, **kw)
        v = solve_subset_variant(s)
        if v.answer:
            assert accepts(s, variant, v.witness)
            assert abs(difference(els, v.witness)) < l


@given(elements(), bounds)
def test_pad_preserves_verdict(els, l):
    s = SubsetSumInstance(els, l)
    assert solve_subset_variant(s, include_empty=True).answer == solve_subset_variant(pad_to_even(s)).answer


@given(elements(max_size=8).filter(lambda e: len(e) % 2 == 0), bounds, fractions(-3, 3), fractions(-3, 3))
def test_rescale_preserves_even_verdict(els, l, a, c):
    assume(a != 0)
    s = SubsetSumInstance(els, l, "even")
    assert solve_subset_variant(s).answer == solve_subset_variant(rescale_instance(s, a, c)).answer


@given(elements(), bounds, fractions(-3, 3))
def test_rescale_inverse(els, l, a):
    assume(a != 0)
    s = SubsetSumInstance(els, l)
    assert rescale_instance(rescale_instance(s, a), 1 / a) == s


@given(st.lists(st.integers(1, 12), min_size=1, max_size=9))
def test_partition_reduction(els):
    p = PartitionInstance(tuple(map(F, els)))
    assert partition_oracle(p).answer == solve_subset_variant(partition_to_subset_sum(p)).answer


@given(elements(min_size=2, max_size=9), bounds, st.data())
def test_m_program_matches_oracle(els, l, data):
    m = data.draw(st.integers(1, len(els) - 1))
    assume(2 * m != len(els))
    s = SubsetSumInstance(els, l, "m", m)
    assert evaluate_m_program(subset_sum_m_program(s, m)) == solve_subset_variant(s).answer
