import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divisikit.errors import DegenerateSpectrum, DimensionMismatch, NotStochasticInput
from divisikit.matrix import MatrixClass, RationalMatrix, classify_matrix
from divisikit.roots import (enumerate_roots, find_nonnegative_root, find_root, find_stochastic_root,
                             lift_singularities, verify_root)
from divisikit.sweeps import involution_like, random_stochastic, spectral_gap

Q = RationalMatrix.from_rows([[F(9, 10), F(1, 10)], [F(1, 5), F(4, 5)]])
SWAP = RationalMatrix.from_rows([[0, 1], [1, 0]])
DIAG = RationalMatrix.from_rows([[1, 0], [0, F(1, 4)]])


def test_classify_examples():
    assert classify_matrix(RationalMatrix.from_rows([["1/2", "1/2"], ["1/4", "3/4"]])) == MatrixClass(True, True, False)
    assert classify_matrix(RationalMatrix.from_rows([[1, 1], [0, 1]])) == MatrixClass(True, False, False)
    assert classify_matrix(RationalMatrix.from_rows([["1/2", "1/2"], ["1/2", "1/2"]])) == MatrixClass(True, True, True)


def test_enumerate_diagonal():
    fam = enumerate_roots(DIAG)
    assert len(fam) == 4
    diags = sorted(tuple(np.round(np.diag(r).real, 12)) for _, r in fam.branches())
    assert diags == [(-1, -0.5), (-1, 0.5), (1, -0.5), (1, 0.5)]


def test_enumerate_swap():
    fam = enumerate_roots(SWAP)
    assert len(fam) == 4
    for _, r in fam.branches():
        ev = sorted(np.round(np.linalg.eigvals(r), 12), key=lambda z: (z.real, z.imag))
        assert all(any(abs(e - c) < 1e-9 for c in (1, -1, 1j, -1j)) for e in ev)
        if np.abs(r.imag).max() < 1e-12:
            # a real root of the swap keeps eigenvalue signs +-1 only for the identity-sign pair
            assert np.allclose(r @ r, SWAP.to_numpy())
    assert find_stochastic_root(SWAP) is None


def test_enumerate_identity_degenerate():
    with pytest.raises(DegenerateSpectrum):
        enumerate_roots(RationalMatrix.identity(2))


def test_stochastic_examples():
    res = find_stochastic_root(Q @ Q)
    assert np.abs(res.matrix - Q.to_numpy()).max() <= 1e-9
    # diag(1, 1/4) is not stochastic, so the stochastic search declines it
    assert find_stochastic_root(DIAG) is None
    with pytest.raises(NotStochasticInput):
        find_stochastic_root(DIAG, strict=True)
    assert np.allclose(find_nonnegative_root(DIAG).matrix, np.diag([1, 0.5]))


def test_nonnegative_examples():
    res = find_nonnegative_root(RationalMatrix.from_rows([[4, 0], [0, 9]]))
    assert np.allclose(res.matrix, np.diag([2, 3]))
    assert find_nonnegative_root(SWAP) is None
    assert find_root(Q @ Q, "doubly") is None
    ds = RationalMatrix.from_rows([[F(3, 4), F(1, 4)], [F(1, 4), F(3, 4)]])
    assert np.allclose(find_root(ds @ ds, "doubly").matrix, ds.to_numpy())


def test_verify_examples():
    rep = verify_root(RationalMatrix.from_rows([[1, 0], [0, F(1, 2)]]), DIAG)
    assert rep.exact and rep.deviation == 0
    rep = verify_root(Q, Q @ Q)
    assert rep.deviation == 0 and rep.min_entry >= 0 and rep.row_sum_deviation == 0
    with pytest.raises(DimensionMismatch):
        verify_root(Q, RationalMatrix.identity(3))


def test_lift_singularities_examples():
    a = np.diag([1.0, 0.0])
    b = lift_singularities(a)
    assert b[0, 0] == 1 and 0 < b[1, 1] <= 1 / 8
    c = np.array([[2.0, 1.0], [1.0, 3.0]])
    assert np.array_equal(lift_singularities(c), c)


def test_swap_and_involutions_rejected():
    rng = random.Random(3)
    made = 0
    while made < 20:
        m = involution_like(rng, rng.randint(2, 4))
        if m is not None:
            made += 1
            assert find_stochastic_root(m) is None


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_completeness_on_squares(seed, d):
    q = random_stochastic(random.Random(seed), d)
    p = q @ q
    if spectral_gap(p.to_numpy()) < 1e-4:
        return
    res = find_stochastic_root(p)
    assert res is not None
    assert np.abs(res.matrix @ res.matrix - p.to_numpy()).max() <= 1e-9
    assert verify_root(res.matrix, p).deviation <= 1e-9


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(2, 4))
def test_every_branch_squares_back(seed, d):
    p = random_stochastic(random.Random(seed), d)
    if spectral_gap(p.to_numpy()) < 1e-3:
        return
    fam = enumerate_roots(p)
    for _, r in fam.branches():
        assert np.abs(r @ r - p.to_numpy()).max() <= 1e-9


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(2, 3))
def test_perron_fixing_loses_no_root(seed, d):
    rng = random.Random(seed)
    rows = [[F(rng.randint(1, 9), 3) for _ in range(d)] for _ in range(d)]
    q = RationalMatrix.from_rows(rows)
    p = q @ q
    if spectral_gap(p.to_numpy()) < 1e-3:
        return
    full = enumerate_roots(p)
    exhaustive = any(np.abs(r.imag).max() < 1e-9 and r.real.min() >= -1e-9 for _, r in full.branches())
    assert exhaustive == (find_nonnegative_root(p) is not None)
    assert len(enumerate_roots(p, fix_perron=True)) * 2 == len(full)
