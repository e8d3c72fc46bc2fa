"""Classical-to-quantum embedding, Choi matrices and CPTP root search.

Composite indices (i, k) are flattened as i*d + k. The Choi matrix is
the reshuffle C[(i,j),(k,l)] = B[(i,k),(j,l)], and tr_2 traces out the
second index of each pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

import numpy as np

from .errors import NotSquareDimension
from .matrix import RationalMatrix
from .roots import DEFAULT_TOL, MatrixLike, enumerate_roots

Matrix = Union[RationalMatrix, np.ndarray]


def _side(n: int) -> int:
    d = isqrt(n)
    if d * d != n:
        raise NotSquareDimension(f"dimension {n} is not a perfect square")
    return d


def emb(a: Matrix) -> Matrix:
    """B = sum_ij A_ij (e_i e_j^T) (x) (e_i e_j^T)."""
    if isinstance(a, RationalMatrix):
        d = a.dim
        rows = [[Fraction(0)] * (d * d) for _ in range(d * d)]
        for i in range(d):
            for j in range(d):
                rows[i * d + i][j * d + j] = a.rows[i][j]
        return RationalMatrix(tuple(tuple(r) for r in rows))
    x = np.asarray(a)
    d = x.shape[0]
    out = np.zeros((d * d, d * d), dtype=x.dtype)
    idx = np.arange(d) * (d + 1)
    out[np.ix_(idx, idx)] = x
    return out


def _reshuffle_np(b: np.ndarray, d: int) -> np.ndarray:
    # b[(i,k),(j,l)] -> c[(i,j),(k,l)]
    return b.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def choi(b: Matrix) -> Matrix:
    if isinstance(b, RationalMatrix):
        d = _side(b.dim)
        rows = tuple(tuple(b.rows[i * d + k][j * d + l] for k in range(d) for l in range(d))
                     for i in range(d) for j in range(d))
        return RationalMatrix(rows)
    x = np.asarray(b)
    return _reshuffle_np(x, _side(x.shape[0]))


def partial_trace(c: Matrix) -> Matrix:
    """tr_2: sum over the second index of each composite pair."""
    if isinstance(c, RationalMatrix):
        d = _side(c.dim)
        return RationalMatrix(tuple(tuple(sum((c.rows[i * d + j][k * d + j] for j in range(d)), Fraction(0))
                                          for k in range(d)) for i in range(d)))
    x = np.asarray(c)
    d = _side(x.shape[0])
    return np.einsum("ijkj->ik", x.reshape(d, d, d, d))


def is_psd_exact(m: RationalMatrix) -> bool:
    """Symmetric pivoted LDL^T in exact arithmetic."""
    n = m.dim
    a = [list(r) for r in m.rows]
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(i)):
        return False
    live = list(range(n))
    while live:
        p = max(live, key=lambda i: a[i][i])
        piv = a[p][p]
        if piv < 0:
            return False
        live.remove(p)
        if piv == 0:
            if any(a[p][j] != 0 for j in live):
                return False
            continue
        row = {j: a[p][j] for j in live if a[p][j]}
        for i, ri in row.items():
            f = ri / piv
            for j, rj in row.items():
                a[i][j] -= f * rj
    return True


@dataclass(frozen=True)
class CptpReport:
    completely_positive: bool
    trace_preserving: bool
    min_eigenvalue: float
    trace_deviation: Union[Fraction, float]
    exact: bool

    @property
    def cptp(self) -> bool:
        return self.completely_positive and self.trace_preserving

    def __bool__(self) -> bool:
        return self.cptp


def is_cptp(b: Matrix, tol: float = DEFAULT_TOL) -> CptpReport:
    c = choi(b)
    t = partial_trace(c)
    if isinstance(c, RationalMatrix):
        ftol = Fraction(tol)
        shifted = c + RationalMatrix.identity(c.dim).scale(ftol)
        cp = is_psd_exact(shifted)
        dev = max(abs(t.rows[i][k] - (i == k)) for i in range(t.dim) for k in range(t.dim))
        sym = c.to_numpy()
        lam = float(np.linalg.eigvalsh((sym + sym.T) / 2).min())
        return CptpReport(cp, dev <= ftol, lam, dev, True)
    herm = float(np.abs(c - c.conj().T).max())
    lam = float(np.linalg.eigvalsh((c + c.conj().T) / 2).min())
    dev = float(np.abs(t - np.eye(t.shape[0])).max())
    return CptpReport(herm <= tol and lam >= -tol, dev <= tol, lam, dev, False)


@dataclass(frozen=True)
class CptpRoot:
    matrix: np.ndarray
    branch: int


def find_cptp_root(b: MatrixLike, precision: int = 128, tol: float = DEFAULT_TOL) -> Optional[CptpRoot]:
    """Smallest-index primary root of a CPTP matrix that is itself CPTP."""
    if not is_cptp(b, tol):
        return None
    x = b.to_numpy() if isinstance(b, RationalMatrix) else np.asarray(b)
    nonneg = not np.iscomplexobj(x) or np.abs(x.imag).max() == 0
    nonneg = nonneg and x.real.min() >= 0
    fam = enumerate_roots(b, precision, tol, fix_perron=nonneg)
    for idx, r in fam.branches():
        if np.abs(r @ r - x).max() > tol:
            continue
        cand = r.real if np.abs(r.imag).max() <= tol else r
        if is_cptp(cand, tol):
            return CptpRoot(cand, idx)
    return None
