"""1-in-3-SAT embedded into a family of matrices with a common square.

Vectors live in R^d with coordinates laid out as

    [ clause head (n_c) | pair slots (K(K-1)/2) | zero-sum slots (K) | last ]

for the K construction vectors c1, c2, v_1..v_nv, E1, b_1..b_nc. Each
pair of vectors owns one slot that cancels their inner product, so the
entries never grow. Each vector also owns a zero-sum slot which, with the
shared last coordinate, makes it orthogonal to the two mask vectors E2
and Delta.
Matrices are sums of x x^T (x) K with 2x2 patterns K, so coordinate r and
inner index a sit at row 2r + a.

Branch s in {+-1}^n_v flips the sign of p_k; the branch matrix is
nonnegative iff s satisfies every clause.
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionTooSmall, InstanceTooLarge, MalformedInput, ParamsTooSmall
from .lift import LiftResult, lift_nonneg_to_stochastic, lifted_square
from .matrix import RationalMatrix

F = Fraction
K1 = ((1, 1), (-1, 1))
K2 = ((0, 1), (1, 0))
K3 = ((0, 1), (-1, 0))
ONES = ((1, 1), (1, 1))
D_PATTERN = ((2, 0), (2, 0))
ANTI = ((F(1, 2), F(-1, 2)), (F(-1, 2), F(1, 2)))  # projector onto ker ONES
D_KER = ((0, 0), (-1, 1))  # spectral projector onto ker D_PATTERN
E_WEIGHT = F(7, 2)
SAT_CAP = 24


@dataclass(frozen=True)
class SatInstance:
    n_v: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        cl = tuple(tuple(int(x) for x in c) for c in self.clauses)
        if self.n_v < 0:
            raise MalformedInput("variable count must be nonnegative")
        for c in cl:
            if len(c) != 3:
                raise MalformedInput("every clause needs exactly 3 literals")
            if any(x == 0 or abs(x) > self.n_v for x in c):
                raise MalformedInput(f"literal out of range in clause {c}")
        object.__setattr__(self, "clauses", cl)

    @property
    def n_c(self) -> int:
        return len(self.clauses)

    @property
    def monotone(self) -> bool:
        """Positive literals, three distinct variables per clause."""
        return all(min(c) > 0 and len(set(c)) == 3 for c in self.clauses)


PARITY_INSTANCE = SatInstance(4, ((1, 2, 4), (2, 3, 4), (1, 3, 4), (1, 2, 3)))


def assignment_of(index: int, n_v: int) -> tuple[int, ...]:
    """Bit k of index set means variable k+1 is TRUE (+1)."""
    return tuple(1 if index >> k & 1 else -1 for k in range(n_v))


def clause_satisfied(clause: Sequence[int], s: Sequence[int]) -> bool:
    trues = sum(1 for lit in clause if (s[abs(lit) - 1] > 0) == (lit > 0))
    return trues == 1


@dataclass(frozen=True)
class SatVerdict:
    answer: bool
    assignment: Optional[tuple[int, ...]] = None


def sat_oracle(inst: SatInstance, cap: int = SAT_CAP) -> SatVerdict:
    if inst.n_v > cap:
        raise InstanceTooLarge(f"{inst.n_v} variables exceed the cap {cap}")
    for idx in range(2 ** inst.n_v):
        s = assignment_of(idx, inst.n_v)
        if all(clause_satisfied(c, s) for c in inst.clauses):
            return SatVerdict(True, s)
    return SatVerdict(False)


def to_monotone(inst: SatInstance) -> SatInstance:
    """Equisatisfiable instance with positive, pairwise distinct literals.

    Original variables keep their indices. Fresh a, b, c, d with clauses
    R(a,b,c), R(a,b,d), R(a,c,d) force a TRUE and b, c, d FALSE; a negated
    literal -x becomes a fresh x' with R(x, x', c). A repeated variable
    R(x, x, y) forces x FALSE and y TRUE; R(x, x, x) is unsatisfiable.
    """
    if inst.monotone:
        return inst
    n = inst.n_v
    a, b, c, d = n + 1, n + 2, n + 3, n + 4
    n += 4
    clauses = [(a, b, c), (a, b, d), (a, c, d)]
    negs: dict[int, int] = {}
    forced_true_extra: Optional[int] = None

    def pos(lit: int) -> int:
        nonlocal n
        if lit > 0:
            return lit
        if -lit not in negs:
            n += 1
            negs[-lit] = n
            clauses.append((-lit, n, c))
        return negs[-lit]

    for cl in inst.clauses:
        lits = [pos(x) for x in cl]
        counts = {x: lits.count(x) for x in lits}
        if len(counts) == 3:
            clauses.append(tuple(lits))
        elif len(counts) == 2:
            x = next(k for k, v in counts.items() if v == 2)
            y = next(k for k, v in counts.items() if v == 1)
            clauses.append((x, a, c))
            clauses.append((y, b, c))
        else:
            if forced_true_extra is None:
                n += 1
                forced_true_extra = n
                clauses.append((forced_true_extra, b, c))
            clauses.append((a, forced_true_extra, c))
    return SatInstance(n, tuple(clauses))


@dataclass(frozen=True)
class EmbeddingParams:
    """Constants of the embedding; None picks the documented default.

    N, M: distinctness denominators (default 100 n_v, 100 n_c)
    delta: D-mask scale (default 100 times the vector dimension, doubled
           until the mask leaves head space)
    n_d:   mask weight (default 2 K / min tail entry of D)
    lift_c: singularity lifting constant C
    head_budget: largest amount N_D * D may add to a clause entry
    """

    N: Optional[int] = None
    M: Optional[int] = None
    delta: Optional[Fraction] = None
    n_d: Optional[Fraction] = None
    lift_c: int = 1000
    head_budget: Fraction = F(1, 8)


def rescaled_p(n_v: int, N: int) -> list[Fraction]:
    """Magnitudes |p_k| = 1 - 1/N - k/(N n_v)."""
    return [1 - F(1, N) - F(k, N * n_v) for k in range(1, n_v + 1)]


def mask_t(n_c: int, M: int) -> list[Fraction]:
    return [1 - F(1, M) - F(i, M * n_c) for i in range(1, n_c + 1)]


def clause_inequalities(inst: SatInstance, assignment: Sequence[int], N: Optional[int] = None
                        ) -> list[tuple[Fraction, Fraction]]:
    """(3/2 + P_i, -1/2 - P_i) per clause; P_i sums the (rescaled) literal values."""
    mags = rescaled_p(inst.n_v, N) if N else [F(1)] * inst.n_v
    out = []
    for cl in inst.clauses:
        p = sum((mags[abs(x) - 1] * assignment[abs(x) - 1] * (1 if x > 0 else -1) for x in cl), F(0))
        out.append((F(3, 2) + p, F(-1, 2) - p))
    return out


# vector geometry

@dataclass
class Layout:
    n_c: int
    heads: list[list[Fraction]]
    delta: Fraction

    @property
    def k(self) -> int:
        return len(self.heads)

    @property
    def pairs(self) -> int:
        return self.k * (self.k - 1) // 2

    @property
    def dim(self) -> int:
        return self.n_c + self.pairs + self.k + 1

    @property
    def a(self) -> Fraction:
        n, d = self.n_c, self.dim
        return -F(n) / self.delta ** 2 + F(d - n - 1) / self.delta


def mask_vectors(dim: int, n: int, delta: Fraction) -> tuple[list[Fraction], list[Fraction]]:
    """E2 = (1/delta on n coords, 1 elsewhere); Delta orthogonal to it."""
    if not 0 < n < dim - 1:
        raise DimensionTooSmall(f"need 0 < {n} < {dim} - 1")
    delta = F(delta)
    a = -F(n) / delta ** 2 + F(dim - n - 1) / delta
    e2 = [1 / delta] * n + [F(1)] * (dim - n)
    dl = [1 / delta] * n + [-1 / delta] * (dim - n - 1) + [a]
    return e2, dl


def orthogonal_vectors(layout: Layout) -> list[list[Fraction]]:
    n, k, dim, delta, a = layout.n_c, layout.k, layout.dim, layout.delta, layout.a
    last, zero0 = dim - 1, n + layout.pairs
    ys = [-(sum(h, F(0)) / delta) * (1 + 1 / delta) / (a + 1 / delta) for h in layout.heads]
    vecs = [[F(0)] * dim for _ in range(k)]
    for m, (head, y) in enumerate(zip(layout.heads, ys)):
        vecs[m][:n] = head
        vecs[m][last] = y
    for slot, (j, m) in enumerate(itertools.combinations(range(k), 2)):
        g = _dot(layout.heads[j], layout.heads[m]) + ys[j] * ys[m]
        vecs[j][n + slot] = F(1)
        vecs[m][n + slot] = -g
    for m, x in enumerate(vecs):
        region = sum(x[n:zero0], F(0))
        x[zero0 + m] = -sum(layout.heads[m], F(0)) / delta - x[last] - region
    return vecs


def _dot(x, y) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), F(0))


def _add_kron(mat: list[list[Fraction]], x, y, pattern, coef) -> None:
    nzx = [(i, v) for i, v in enumerate(x) if v]
    nzy = [(j, v) for j, v in enumerate(y) if v]
    pat = [(p, q, F(pattern[p][q])) for p in range(2) for q in range(2) if pattern[p][q]]
    for i, xi in nzx:
        for j, yj in nzy:
            base = coef * xi * yj
            for p, q, w in pat:
                mat[2 * i + p][2 * j + q] += base * w


def _zeros(n: int) -> list[list[Fraction]]:
    return [[F(0)] * n for _ in range(n)]


def _heads(inst: SatInstance) -> list[list[Fraction]]:
    n_c = inst.n_c
    ones = [F(1)] * n_c
    v = [[F(1) if k + 1 in cl else F(0) for cl in inst.clauses] for k in range(inst.n_v)]
    b = [[F(int(i == j)) for i in range(n_c)] for j in range(n_c)]
    return [ones, ones[:]] + v + [ones[:]] + b


@dataclass
class Construction:
    inst: SatInstance
    layout: Layout
    vectors: list[list[Fraction]]
    e2: list[Fraction]
    dl: list[Fraction]
    p: list[Fraction]
    t: list[Fraction]

    @property
    def c1(self):
        return self.vectors[0]

    @property
    def c2(self):
        return self.vectors[1]

    @property
    def v(self):
        return self.vectors[2:2 + self.inst.n_v]

    @property
    def e1(self):
        return self.vectors[2 + self.inst.n_v]

    @property
    def b(self):
        return self.vectors[3 + self.inst.n_v:]


def _construct(inst: SatInstance, N: int, M: int, delta: Fraction) -> Construction:
    layout = Layout(inst.n_c, _heads(inst), F(delta))
    vecs = orthogonal_vectors(layout)
    e2, dl = mask_vectors(layout.dim, inst.n_c, layout.delta)
    return Construction(inst, layout, vecs, e2, dl, rescaled_p(inst.n_v, N), mask_t(inst.n_c, M))


def _check_monotone(inst: SatInstance) -> None:
    if not inst.monotone:
        raise MalformedInput("embedding needs positive literals with distinct variables; use to_monotone")
    if inst.n_c == 0 or inst.n_v == 0:
        raise MalformedInput("embedding needs at least one clause")


def build_coding_block(inst: SatInstance, assignment: Sequence[int], params: EmbeddingParams = EmbeddingParams(),
                       _c: Optional[Construction] = None) -> RationalMatrix:
    _check_monotone(inst)
    c = _c or _construct(inst, *_defaults(inst, params), params.delta or _default_delta(inst))
    mat = _zeros(2 * c.layout.dim)
    _add_kron(mat, c.c1, c.c1, K1, F(1))
    _add_kron(mat, c.c2, c.c2, K2, F(1, 2))
    for k, vk in enumerate(c.v):
        _add_kron(mat, vk, vk, K3, c.p[k] * assignment[k])
    return RationalMatrix(tuple(tuple(r) for r in mat))


def _mask_e(c: Construction) -> list[list[Fraction]]:
    mat = _zeros(2 * c.layout.dim)
    _add_kron(mat, c.e1, c.e1, ONES, E_WEIGHT)
    for ti, bi in zip(c.t, c.b):
        _add_kron(mat, bi, bi, ONES, -E_WEIGHT * ti)
    return mat


def build_mask_E(inst: SatInstance, params: EmbeddingParams = EmbeddingParams(),
                 _c: Optional[Construction] = None) -> RationalMatrix:
    _check_monotone(inst)
    c = _c or _construct(inst, *_defaults(inst, params), params.delta or _default_delta(inst))
    return RationalMatrix(tuple(tuple(r) for r in _mask_e(c)))


def build_mask_D(total_dim: int, block_count: int, delta, sign: int = 1) -> RationalMatrix:
    """E2 E2^T (x) ONES + sign * Delta Delta^T (x) D_PATTERN over total_dim coordinates."""
    e2, dl = mask_vectors(total_dim, block_count, F(delta))
    mat = _zeros(2 * total_dim)
    _add_kron(mat, e2, e2, ONES, F(1))
    _add_kron(mat, dl, dl, D_PATTERN, F(sign))
    return RationalMatrix(tuple(tuple(r) for r in mat))


def _mask_D_extremes(e2, dl, n_c: int) -> tuple[Fraction, Fraction]:
    """Largest clause-head entry and smallest tail entry of the D mask.

    Entry (2i+p, 2j+q) is e2_i e2_j + dl_i dl_j D_PATTERN[p][q]; only the
    distinct (e2_i, dl_i) pairs matter.
    """
    def entries(a, b):
        base = a[0] * b[0]
        return [base + a[1] * b[1] * w for w in {x for r in D_PATTERN for x in r}]

    head = set(zip(e2[:n_c], dl[:n_c]))
    tail = set(zip(e2[n_c:], dl[n_c:]))
    head_max = max(x for a in head for b in head for x in entries(a, b))
    tail_min = min(x for a in tail for b in head | tail for x in entries(a, b))
    return head_max, tail_min


def _defaults(inst: SatInstance, params: EmbeddingParams) -> tuple[int, int]:
    return params.N or 100 * max(inst.n_v, 1), params.M or 100 * max(inst.n_c, 1)


def _default_delta(inst: SatInstance) -> Fraction:
    return F(100 * Layout(inst.n_c, _heads(inst), F(1)).dim)


def _check_headspace(inst: SatInstance, N: int, M: int) -> None:
    """Rescaled p and t must not move any clause inequality across zero."""
    worst = F(3) * (F(1, N) + F(1, N))  # largest shift of P_i
    erase = E_WEIGHT * 2 * (F(1, M) + F(1, M))  # largest leftover of the erased blocks
    if worst >= F(1, 4) or erase >= F(1, 4):
        raise ParamsTooSmall("distinctness rescale leaves no head space")
    for cl in inst.clauses:
        for signs in itertools.product((1, -1), repeat=3):
            s = [1] * inst.n_v
            for x, sg in zip(cl, signs):
                s[x - 1] = sg
            (lo, hi), = clause_inequalities(SatInstance(inst.n_v, (cl,)), s, N)
            ok = min(lo, hi) > 0
            if ok != (signs.count(1) == 1):
                raise ParamsTooSmall("rescaled clause inequalities changed sign")


def _to_int_array(rows: list[list[Fraction]], denom: int) -> np.ndarray:
    out = np.empty((len(rows), len(rows)), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = x.numerator * (denom // x.denominator)
    return out


@dataclass
class BranchFamily:
    """Branch matrices (base + sum_k s_k term_k) / denom in exact integers."""

    inst: SatInstance
    construction: Construction
    base: np.ndarray
    terms: list[np.ndarray]
    denom: int
    n_d: Fraction
    delta: Fraction
    scale: Fraction
    lift_eigenvalues: tuple[Fraction, ...] = ()
    _float_cache: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def __len__(self) -> int:
        return 2 ** self.inst.n_v

    def assignment(self, index: int) -> tuple[int, ...]:
        return assignment_of(index, self.inst.n_v)

    def numerators(self, index: int) -> np.ndarray:
        out = self.base.copy()
        for sk, term in zip(self.assignment(index), self.terms):
            out = out + term if sk > 0 else out - term
        return out

    def branch(self, index: int) -> RationalMatrix:
        num = self.numerators(index)
        return RationalMatrix(tuple(tuple(F(int(x), self.denom) for x in r) for r in num))

    def _floats(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        # int / int true division rounds correctly even for huge numerators
        if self._float_cache is None:
            to_f = np.vectorize(lambda x: int(x) / self.denom, otypes=[float])
            base = to_f(self.base)
            terms = np.stack([to_f(t) for t in self.terms]) if self.terms else np.zeros((0,) + base.shape)
            bound = (np.abs(base) + np.abs(terms).sum(axis=0)) * ((len(self.terms) + 2) * 2.0 ** -50)
            self._float_cache = (base, terms, bound)
        return self._float_cache

    def branch_is_nonnegative(self, index: int) -> bool:
        """Exact verdict; floats decide every entry farther from 0 than their error bound."""
        base, terms, bound = self._floats()
        signs = np.array(self.assignment(index), dtype=float)
        approx = base + np.tensordot(signs, terms, axes=1)
        if (approx < -bound).any():
            return False
        unsure = np.nonzero((np.abs(approx) <= bound) & (bound > 0))
        if not unsure[0].size:
            return True
        num = self.base[unsure].copy()
        for sk, term in zip(self.assignment(index), self.terms):
            num = num + term[unsure] if sk > 0 else num - term[unsure]
        return bool((num >= 0).all())

    def nonnegative_branches(self) -> list[int]:
        return [i for i in range(len(self)) if self.branch_is_nonnegative(i)]

    def exists_nonnegative_branch(self) -> bool:
        return any(self.branch_is_nonnegative(i) for i in range(len(self)))

    def as_float(self, index: int) -> np.ndarray:
        return np.array([[int(x) / self.denom for x in r] for r in self.numerators(index)])

    def shared_square(self, index: int = 0) -> np.ndarray:
        m = self.as_float(index)
        return m @ m

    def square_spread(self) -> float:
        """max_s ||M_s^2 - M_0^2||_inf in floating point."""
        ref = self.shared_square(0)
        return max(float(np.abs(self.shared_square(i) - ref).max()) for i in range(len(self)))

    def spectral_gap(self, index: int = 0) -> float:
        ev = np.linalg.eigvals(self.as_float(index))
        return float(min(abs(ev[i] - ev[j]) for i in range(len(ev)) for j in range(i)))

    def stochastic(self, index: int) -> LiftResult:
        """Doubly stochastic lift with the family-wide scale a = 1."""
        return lift_nonneg_to_stochastic(self.branch(index), scale=F(1))

    def stochastic_square(self) -> RationalMatrix:
        return lifted_square(self.branch(0), scale=F(1))


def assemble_family(inst: SatInstance, params: EmbeddingParams = EmbeddingParams()) -> BranchFamily:
    _check_monotone(inst)
    N, M = _defaults(inst, params)
    _check_headspace(inst, N, M)
    delta = F(params.delta) if params.delta is not None else _default_delta(inst)
    n_c = inst.n_c
    for _ in range(64):
        c = _construct(inst, N, M, delta)
        dim = c.layout.dim
        if not 0 < c.layout.a < 1:
            delta *= 2
            continue
        # entrywise bound on |C_s + E| outside the clause head, valid for every branch
        weights = [(c.c1, F(1)), (c.c2, F(1, 2))] + list(zip(c.v, c.p))
        weights += [(c.e1, E_WEIGHT)] + [(bi, E_WEIGHT * ti) for bi, ti in zip(c.b, c.t)]
        bound: dict[tuple[int, int], Fraction] = {}
        for x, w in weights:
            nz = [(i, abs(v)) for i, v in enumerate(x) if v]
            for i, xi in nz:
                for j, xj in nz:
                    if i >= n_c or j >= n_c:
                        bound[i, j] = bound.get((i, j), F(0)) + w * xi * xj
        k_tail = max(bound.values())
        head_max, tail_min = _mask_D_extremes(c.e2, c.dl, n_c)
        if tail_min <= 0:
            delta *= 2
            continue
        n_d = F(params.n_d) if params.n_d is not None else 2 * k_tail / tail_min
        if n_d * tail_min <= k_tail:
            raise ParamsTooSmall("mask weight does not dominate the tail")
        if n_d * head_max <= params.head_budget:
            break
        if params.delta is not None and params.n_d is not None:
            raise ParamsTooSmall("mask D leaks into the clause blocks")
        delta *= 2
    else:
        raise ParamsTooSmall("no admissible delta found")

    size = 2 * dim
    base = _zeros(size)
    _add_kron(base, c.c1, c.c1, K1, F(1))
    _add_kron(base, c.c2, c.c2, K2, F(1, 2))
    _add_kron(base, c.e1, c.e1, ONES, E_WEIGHT)
    for ti, bi in zip(c.t, c.b):
        _add_kron(base, bi, bi, ONES, -E_WEIGHT * ti)
    _add_kron(base, c.e2, c.e2, ONES, n_d)
    _add_kron(base, c.dl, c.dl, D_PATTERN, n_d)
    terms = []
    for vk, pk in zip(c.v, c.p):
        t = _zeros(size)
        _add_kron(t, vk, vk, K3, pk)
        terms.append(t)

    # lift the kernel: small positive eigenvalues on exact projectors
    lam0 = F(1, params.lift_c * size ** 3)
    pieces = [(x, ANTI) for x in [c.e1] + c.b + [c.e2]] + [(c.dl, D_KER)]
    lams = [lam0 * (3 + F(j, len(pieces))) for j in range(len(pieces))]
    for (u, pat), lam in zip(pieces, lams):
        _add_kron(base, u, u, pat, lam / _dot(u, u))
    # complement of every construction vector, (x) diag(1, 2)
    for i in range(dim):
        base[2 * i][2 * i] += lam0
        base[2 * i + 1][2 * i + 1] += 2 * lam0
    for x in c.vectors + [c.e2, c.dl]:
        _add_kron(base, x, x, ((1, 0), (0, 2)), -lam0 / _dot(x, x))
    lams = [lam0, 2 * lam0] + lams

    # terms are sparse, so only their supports add to the row-by-row maximum
    spread: dict[tuple[int, int], Fraction] = {}
    for tm in terms:
        for i, r in enumerate(tm):
            for j, x in enumerate(r):
                if x:
                    spread[i, j] = spread.get((i, j), F(0)) + abs(x)
    top = max(max(r) for r in base)
    top = max([top] + [base[i][j] + s for (i, j), s in spread.items()])
    scale = F(1, 2) / top
    denom = 1
    for r in base + [r for t in terms for r in t]:
        for x in r:
            if x.denominator != 1:
                denom = denom * x.denominator // gcd(denom, x.denominator)
    num = scale.numerator
    base_i = _to_int_array(base, denom) * num
    terms_i = [_to_int_array(t, denom) * num for t in terms]
    return BranchFamily(inst, c, base_i, terms_i, denom * scale.denominator, n_d, delta, scale,
                        tuple(x * scale for x in lams))


@dataclass(frozen=True)
class CheckReport:
    encoder_verdict: bool
    oracle_verdict: bool
    nonnegative_branches: tuple[int, ...]
    satisfying_branches: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return self.encoder_verdict == self.oracle_verdict


def check_instance(inst: SatInstance, params: EmbeddingParams = EmbeddingParams(), cap: int = 10) -> CheckReport:
    if inst.n_v > cap:
        raise InstanceTooLarge(f"{inst.n_v} variables exceed the cap {cap}")
    mono = to_monotone(inst)
    fam = assemble_family(mono, params)
    nonneg = tuple(fam.nonnegative_branches())
    sat = tuple(i for i in range(len(fam))
                if all(clause_satisfied(cl, fam.assignment(i)) for cl in mono.clauses))
    return CheckReport(bool(nonneg), sat_oracle(inst).answer, nonneg, sat)


def heatmap(fam: BranchFamily, index: int = 0) -> list[list[float]]:
    """Entries of one branch as floats, row by row."""
    return fam.as_float(index).tolist()
