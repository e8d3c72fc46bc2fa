import random
from fractions import Fraction as F

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from divisikit.cptp import choi, emb, find_cptp_root, is_cptp, is_psd_exact, partial_trace
from divisikit.matrix import RationalMatrix, is_nonnegative
from divisikit.roots import find_stochastic_root
from divisikit.sweeps import random_rational_matrix, random_stochastic, spectral_gap

Q = RationalMatrix.from_rows([[F(9, 10), F(1, 10)], [F(1, 5), F(4, 5)]])
SWAP = RationalMatrix.from_rows([[0, 1], [1, 0]])


def test_emb_swap():
    b = emb(SWAP)
    nonzero = {(i, j) for i in range(4) for j in range(4) if b.rows[i][j]}
    assert nonzero == {(0, 3), (3, 0)}


def test_choi_of_embedding():
    a = RationalMatrix.from_rows([["1/2", "1/2"], ["1/4", "3/4"]])
    c = choi(emb(a))
    # C[(i,j),(i,j)] = A_ij, everything else zero
    for r in range(4):
        for s in range(4):
            assert c.rows[r][s] == (a.rows[r // 2][r % 2] if r == s else 0)


def test_is_cptp_examples():
    assert is_cptp(emb(Q)).cptp
    rep = is_cptp(emb(RationalMatrix.from_rows([[1, F(-1, 10)], [0, F(11, 10)]])))
    assert not rep.completely_positive and rep.min_eigenvalue < 0
    rep = is_cptp(emb(RationalMatrix.from_rows([[1, 1], [0, 1]])))
    assert rep.completely_positive and not rep.trace_preserving


def test_cptp_root_examples():
    res = find_cptp_root(emb(Q @ Q))
    assert res is not None and is_cptp(res.matrix).cptp
    assert np.allclose(res.matrix @ res.matrix, emb(Q @ Q).to_numpy())
    assert find_cptp_root(emb(SWAP)) is None
    assert find_cptp_root(emb(RationalMatrix.from_rows([[1, 1], [0, 1]]))) is None


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_positivity_transfer(seed, d):
    a = random_rational_matrix(random.Random(seed), d)
    assert is_psd_exact(choi(emb(a))) == is_nonnegative(a)


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_trace_transfer(seed, d):
    a = random_rational_matrix(random.Random(seed), d)
    t = partial_trace(choi(emb(a)))
    assert (t == RationalMatrix.identity(d)) == all(s == 1 for s in a.row_sums())


@given(st.integers(0, 10**6), st.integers(1, 4))
def test_spectrum_containment(seed, d):
    a = random_rational_matrix(random.Random(seed), d)
    ev_a = np.linalg.eigvals(a.to_numpy())
    for e in np.linalg.eigvals(emb(a).to_numpy()):
        assert abs(e) < 1e-9 or np.min(np.abs(ev_a - e)) < 1e-6


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(2, 4), st.booleans())
def test_root_equivalence(seed, d, square):
    p = random_stochastic(random.Random(seed), d)
    if square:
        p = p @ p
    if spectral_gap(p.to_numpy()) < 1e-6:
        return
    assert (find_cptp_root(emb(p)) is not None) == (find_stochastic_root(p) is not None)
