"""Primary square roots of matrices with a distinct nonzero spectrum.

A diagonalizable M = sum_k lam_k P_k with spectral projectors P_k has
the primary roots R(s) = sum_k s_k sqrt(lam_k) P_k, one per sign vector
s. Zero eigenvalues contribute nothing, so they carry no sign. Branch
index bit k set means s_k = -1 for the k-th free eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

import mpmath
import numpy as np

from .errors import DegenerateSpectrum, DimensionMismatch, NotDiagonalizable, NotStochasticInput
from .matrix import RationalMatrix, classify_matrix, is_nonnegative

MatrixLike = Union[RationalMatrix, np.ndarray]
DEFAULT_TOL = 1e-9


def _to_mp(m: MatrixLike) -> mpmath.matrix:
    if isinstance(m, RationalMatrix):
        return mpmath.matrix([[mpmath.mpf(x.numerator) / x.denominator for x in r] for r in m.rows])
    a = np.asarray(m)
    return mpmath.matrix([[mpmath.mpc(complex(x)) if np.iscomplexobj(a) else mpmath.mpf(float(x)) for x in r]
                          for r in a])


def _as_array(m: MatrixLike) -> np.ndarray:
    return m.to_numpy() if isinstance(m, RationalMatrix) else np.asarray(m)


@dataclass
class RootFamily:
    eigenvalues: tuple[complex, ...]  # nonzero eigenvalues, each simple
    sqrt_values: tuple[complex, ...]
    projectors: tuple[np.ndarray, ...]
    zero_multiplicity: int
    free: tuple[int, ...]  # eigenvalues whose sign is enumerated
    eigenvectors: Optional[mpmath.matrix] = None
    inverse: Optional[mpmath.matrix] = None
    target: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return self.target.shape[0]

    def __len__(self) -> int:
        return 2 ** len(self.free)

    def signs(self, index: int) -> list[int]:
        s = [1] * len(self.eigenvalues)
        for bit, k in enumerate(self.free):
            if index >> bit & 1:
                s[k] = -1
        return s

    def branch(self, index: int) -> np.ndarray:
        r = np.zeros((self.dim, self.dim), dtype=complex)
        for s, root, p in zip(self.signs(index), self.sqrt_values, self.projectors):
            r += s * root * p
        return r

    def branches(self) -> Iterator[tuple[int, np.ndarray]]:
        for i in range(len(self)):
            yield i, self.branch(i)


def _perron_index(eigs: list, tol: float) -> Optional[int]:
    """Index of the real eigenvalue of largest modulus, if it dominates."""
    if not eigs:
        return None
    k = max(range(len(eigs)), key=lambda i: (abs(eigs[i]), eigs[i].real))
    lam = eigs[k]
    if abs(lam.imag) <= tol and lam.real > 0:
        return k
    return None


def enumerate_roots(m: MatrixLike, precision: int = 128, tol: float = DEFAULT_TOL,
                    fix_perron: bool = False) -> RootFamily:
    a = _as_array(m).astype(complex)
    d = a.shape[0]
    if a.shape != (d, d):
        raise DimensionMismatch("matrix must be square")
    scale = max(1.0, float(np.abs(a).max()))
    sep = tol * scale
    with mpmath.workprec(precision):
        mm = _to_mp(m)
        eigs, left, right = mpmath.eig(mm, left=True, right=True)
        values = [complex(e) for e in eigs]
        nonzero = [k for k in range(d) if abs(values[k]) > sep]
        for i, p in enumerate(nonzero):
            for q in nonzero[i + 1:]:
                if abs(values[p] - values[q]) <= sep:
                    raise DegenerateSpectrum("repeated nonzero eigenvalue")
        projectors = []
        for k in nonzero:
            z = right[:, k]
            w = left[k, :]
            denom = (w * z)[0]
            if abs(denom) < mpmath.mpf(10) ** (-precision // 8):
                raise DegenerateSpectrum("defective eigenvalue")
            p = (z * w) / denom
            projectors.append(np.array(p.tolist(), dtype=complex))
        roots = [complex(mpmath.sqrt(eigs[k])) for k in nonzero]
    lams = [values[k] for k in nonzero]
    recon = sum((lam * p for lam, p in zip(lams, projectors)), np.zeros((d, d), dtype=complex))
    if np.abs(recon - a).max() > tol * scale * 10:
        raise DegenerateSpectrum("matrix is not diagonalizable on its kernel")
    free = list(range(len(lams)))
    if fix_perron:
        k = _perron_index(lams, sep)
        if k is not None:
            free.remove(k)
    return RootFamily(tuple(lams), tuple(roots), tuple(projectors), d - len(lams), tuple(free),
                      right, left, a)


@dataclass(frozen=True)
class RootResult:
    matrix: np.ndarray
    branch: int
    deviation: float


def _search(m: MatrixLike, precision: int, tol: float, row_sums: bool, col_sums: bool) -> Optional[RootResult]:
    fam = enumerate_roots(m, precision, tol, fix_perron=True)
    target = fam.target.real
    for idx, r in fam.branches():
        if np.abs(r.imag).max() > tol:
            continue
        q = r.real
        if q.min() < -tol:
            continue
        if row_sums and np.abs(q.sum(axis=1) - 1).max() > tol:
            continue
        if col_sums and np.abs(q.sum(axis=0) - 1).max() > tol:
            continue
        q = np.where(q < 0, 0.0, q)
        dev = float(np.abs(q @ q - target).max())
        if dev <= tol:
            return RootResult(q, idx, dev)
    return None


def find_stochastic_root(p: MatrixLike, precision: int = 128, tol: float = DEFAULT_TOL,
                         strict: bool = False, doubly: bool = False) -> Optional[RootResult]:
    """Smallest-index primary root that is (doubly) stochastic within tol."""
    if isinstance(p, RationalMatrix):
        cls = classify_matrix(p)
        ok = cls.doubly_stochastic if doubly else cls.stochastic
    else:
        a = np.asarray(p, dtype=float)
        ok = a.min() >= -tol and np.abs(a.sum(axis=1) - 1).max() <= tol
        if doubly:
            ok = ok and np.abs(a.sum(axis=0) - 1).max() <= tol
    if not ok:
        if strict:
            raise NotStochasticInput("input is not stochastic")
        return None
    return _search(p, precision, tol, True, doubly)


def find_nonnegative_root(m: MatrixLike, precision: int = 128, tol: float = DEFAULT_TOL) -> Optional[RootResult]:
    if isinstance(m, RationalMatrix) and not is_nonnegative(m):
        return None
    return _search(m, precision, tol, False, False)


def find_root(m: MatrixLike, mode: str = "stochastic", precision: int = 128,
              tol: float = DEFAULT_TOL) -> Optional[RootResult]:
    if mode == "stochastic":
        return find_stochastic_root(m, precision, tol)
    if mode == "doubly":
        return find_stochastic_root(m, precision, tol, doubly=True)
    if mode == "nonnegative":
        return find_nonnegative_root(m, precision, tol)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class RootReport:
    deviation: Union[Fraction, float]
    min_entry: Union[Fraction, float]
    row_sum_deviation: Union[Fraction, float]
    exact: bool

    def ok(self, tol: float = DEFAULT_TOL) -> bool:
        return self.deviation <= tol


def verify_root(q: MatrixLike, p: MatrixLike, tol: float = DEFAULT_TOL) -> RootReport:
    """Compare q @ q with p; exact when both are rational."""
    dq = q.dim if isinstance(q, RationalMatrix) else np.asarray(q).shape[0]
    dp = p.dim if isinstance(p, RationalMatrix) else np.asarray(p).shape[0]
    if dq != dp:
        raise DimensionMismatch(f"root has dimension {dq}, target {dp}")
    if isinstance(q, RationalMatrix) and isinstance(p, RationalMatrix):
        diff = (q @ q) - p
        return RootReport(max(abs(x) for x in diff.entries()), min(q.entries()),
                          max(abs(s - 1) for s in q.row_sums()), True)
    qa, pa = _as_array(q), _as_array(p)
    return RootReport(float(np.abs(qa @ qa - pa).max()), float(qa.real.min()),
                      float(np.abs(qa.sum(axis=1) - 1).max()), False)


def lift_singularities(a: MatrixLike, c: float = 1.0, tol: float = 1e-10) -> np.ndarray:
    """Replace the zero eigenvalues of a diagonalizable matrix by small distinct positive ones.

    The new eigenvalues are at most 1/(C d^3 m^2) with m the largest entry
    of the eigenvector matrix and its inverse, so no entry moves by more
    than 1/(C d^2).
    """
    x = _as_array(a).astype(float)
    d = x.shape[0]
    u, sv, vt = np.linalg.svd(x)
    cutoff = tol * max(1.0, sv[0] if d else 1.0)
    r = int(np.sum(sv <= cutoff))
    if r == 0:
        return x.copy()
    k = vt[d - r:].T  # right kernel
    l = u[:, d - r:].T  # left kernel
    lk = l @ k
    if abs(np.linalg.det(lk)) < tol:
        raise NotDiagonalizable("zero eigenvalue has a Jordan block")
    w, z = np.linalg.eig(x)
    if np.linalg.cond(z) > 1 / tol:
        raise NotDiagonalizable("eigenvector matrix is singular")
    m = max(np.abs(z).max(), np.abs(np.linalg.inv(z)).max(), 1.0)
    bound = 1 / (c * d ** 3 * m * m)
    nonzero = np.abs(w)[np.abs(w) > cutoff]
    if nonzero.size:
        bound = min(bound, nonzero.min() / 2)
    lams = np.array([bound * (i + 1) / r for i in range(r)])
    return x + k @ np.diag(lams) @ np.linalg.inv(lk) @ l
