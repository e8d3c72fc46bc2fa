"""Randomised acceptance suites shared by the tests, the CLI and scripts/."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
import sympy

from .cptp import choi, emb, find_cptp_root, is_cptp, partial_trace
from .decomposability import counterexample_family, decompose_even, enumerate_complete_decompositions
from .dist import FiniteDistribution, convolve_power, normalize_distribution, uniform
from .divisibility import divisibility_eps, is_n_divisible
from .errors import DegenerateSpectrum
from .gadgets import encode_even_subset_sum
from .lift import lift_nonneg_to_stochastic, lifted_square
from .matrix import RationalMatrix, classify_matrix
from .nptools import (PartitionInstance, SubsetSumInstance, evaluate_m_program, pad_to_even,
                      partition_oracle, partition_to_subset_sum, rescale_instance, solve_subset_variant,
                      subset_sum_m_program)
from .roots import find_stochastic_root
from .sat import PARITY_INSTANCE, SatInstance, check_instance, sat_oracle

F = Fraction


@dataclass(frozen=True)
class SweepResult:
    criterion: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.criterion:2d} {status}  {self.name}: {self.detail} ({self.seconds:.1f}s)"


def _rand_pmf(rng: random.Random, support: int, top: int = 9) -> FiniteDistribution:
    raw = [rng.randint(0, top) for _ in range(support)]
    raw[0] = raw[0] or 1
    raw[-1] = raw[-1] or 1
    return normalize_distribution(raw)[0]


def is_nth_power_oracle(d: FiniteDistribution, n: int) -> bool:
    """Independent check through sympy's square-free decomposition."""
    x = sympy.Symbol("x")
    f = sympy.Poly([sympy.Rational(p.numerator, p.denominator) for p in reversed(d.probs)], x)
    _, parts = sympy.sqf_list(f)
    if any(k % n for _, k in parts):
        return False
    root = sympy.Integer(1)
    for q, k in parts:
        root *= q.as_expr() ** (k // n)
    coeffs = sympy.Poly(root, x).all_coeffs()
    return all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)


def sweep_divisibility(rng: random.Random, count: int = 1000) -> tuple[bool, str]:
    recovered = false_pos = 0
    for _ in range(count):
        n = rng.choice((2, 3, 5))
        g = _rand_pmf(rng, rng.randint(1, 21))
        v = is_n_divisible(convolve_power(g, n), n)
        recovered += v.answer and v.witness == g
    checked = 0
    while checked < count:
        n = rng.choice((2, 3, 5))
        d = _rand_pmf(rng, rng.randint(2, 21))
        if is_nth_power_oracle(d, n):
            continue
        checked += 1
        false_pos += is_n_divisible(d, n).answer
    return recovered == count and false_pos == 0, f"{recovered}/{count} powers recovered, {false_pos} false positives"


def sweep_uniform(rng: random.Random, top: int = 30) -> tuple[bool, str]:
    hits = [(k, n) for k in range(2, top + 1) for n in range(2, top + 1)
            if is_n_divisible(uniform(k), n).answer]
    return not hits, f"uniform 2..{top}: {len(hits)} divisible pairs"


def grid_value(p: Sequence[Fraction], n: int = 2, step: float = 1e-3) -> float:
    """min over a step-grid of pmfs g of max|g^n - p|, p padded like divisibility_eps."""
    w = len(p) - 1
    m = -(-w // n)
    if m == 0:
        return 0.0
    k = int(round(1 / step))
    grids = np.meshgrid(*[np.arange(k + 1)] * m, indexing="ij")
    mask = sum(grids) <= k
    g = [gr[mask] / k for gr in grids]
    g.append(1 - sum(g))
    target = np.zeros(n * m + 1)
    target[:len(p)] = [float(x) for x in p]
    coeffs = [np.ones_like(g[0])]
    for _ in range(n):
        nxt = [np.zeros_like(g[0]) for _ in range(len(coeffs) + m)]
        for i, c in enumerate(coeffs):
            for j, gj in enumerate(g):
                nxt[i + j] = nxt[i + j] + c * gj
        coeffs = nxt
    dev = np.max(np.abs(np.array(coeffs) - target[:, None]), axis=0)
    return float(dev.min())


def sweep_eps(rng: random.Random, count: int = 100, step: float = 1e-3) -> tuple[bool, str]:
    used = disagree = 0
    for _ in range(count):
        d = _rand_pmf(rng, rng.randint(1, 5), 20)
        v = grid_value(d.probs, 2, step)
        for eps in (F(1, 1000), F(1, 100), F(1, 10)):
            if abs(v - float(eps)) <= 2 * step:
                continue
            used += 1
            disagree += divisibility_eps(d, 2, eps).answer != (v < float(eps))
    return disagree == 0, f"{used} decided cases, {disagree} disagreements"


def _rand_q(rng: random.Random, lo: int, hi: int, den: int = 4) -> Fraction:
    return F(rng.randint(lo * den, hi * den), den)


def sweep_even_encoder(rng: random.Random, count: int = 200) -> tuple[bool, str]:
    bad = yes = 0
    for _ in range(count):
        n = rng.choice((2, 4, 6, 8))
        s = SubsetSumInstance(tuple(_rand_q(rng, -5, 5) for _ in range(n)),
                              F(rng.randint(1, 20), 4), "even")
        oracle = solve_subset_variant(s).answer
        yes += oracle
        bad += (decompose_even(encode_even_subset_sum(s)) is not None) != oracle
    return bad == 0, f"{count - bad}/{count} agree ({yes} yes)"


def sweep_counterexample(rng: random.Random, top: int = 3) -> tuple[bool, str]:
    counts = []
    for n in range(1, top + 1):
        res = enumerate_complete_decompositions(counterexample_family(n))
        counts.append(len(res.groupings))
    ok = all(c >= math.factorial(n) for n, c in zip(range(1, top + 1), counts))
    return ok, "complete decompositions per n: " + ", ".join(map(str, counts))


def random_stochastic(rng: random.Random, d: int, top: int = 9) -> RationalMatrix:
    rows = []
    for _ in range(d):
        raw = [rng.randint(0, top) for _ in range(d)]
        if not any(raw):
            raw[rng.randrange(d)] = 1
        t = sum(raw)
        rows.append(tuple(F(x, t) for x in raw))
    return RationalMatrix(tuple(rows))


def spectral_gap(m: np.ndarray) -> float:
    ev = np.linalg.eigvals(m)
    return min((abs(ev[i] - ev[j]) for i in range(len(ev)) for j in range(i)), default=math.inf)


def involution_like(rng: random.Random, d: int) -> Optional[RationalMatrix]:
    """(1-t) Pi + t R with Pi a single transposition; kept if it has a simple negative eigenvalue."""
    i, j = rng.sample(range(d), 2)
    perm = list(range(d))
    perm[i], perm[j] = j, i
    t = F(rng.randint(1, 29), 100)
    r = random_stochastic(rng, d)
    rows = tuple(tuple((1 - t) * (1 if perm[a] == b else 0) + t * r.rows[a][b] for b in range(d))
                 for a in range(d))
    m = RationalMatrix(rows)
    ev = np.linalg.eigvals(m.to_numpy())
    neg = [e for e in ev if abs(e.imag) < 1e-12 and e.real < -1e-6]
    if len(neg) == 1 and spectral_gap(m.to_numpy()) > 1e-6:
        return m
    return None


def sweep_roots(rng: random.Random, count: int = 500, negatives: int = 50, tol: float = 1e-9) -> tuple[bool, str]:
    found = 0
    done = 0
    while done < count:
        q = random_stochastic(rng, rng.randint(2, 5))
        p = q @ q
        if spectral_gap(p.to_numpy()) < 1e-4:
            continue
        done += 1
        r = find_stochastic_root(p, tol=tol)
        found += r is not None and float(np.abs(r.matrix @ r.matrix - p.to_numpy()).max()) <= tol
    swap = RationalMatrix.from_rows([[0, 1], [1, 0]])
    rejected = int(find_stochastic_root(swap) is None)
    made = 0
    while made < negatives:
        m = involution_like(rng, rng.randint(2, 5))
        if m is None:
            continue
        made += 1
        rejected += find_stochastic_root(m) is None
    ok = found == count and rejected == negatives + 1
    return ok, f"{found}/{count} roots found, {rejected}/{negatives + 1} negatives rejected"


def random_rational_matrix(rng: random.Random, d: int, lo: int = -3, hi: int = 9) -> RationalMatrix:
    return RationalMatrix(tuple(tuple(F(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(d))
                                for _ in range(d)))


def sweep_lift(rng: random.Random, count: int = 100) -> tuple[bool, str]:
    good = done = 0
    while done < count:
        m = random_rational_matrix(rng, rng.randint(1, 4), -3 if rng.random() < 0.5 else 0)
        if m.max_entry() <= 0:
            continue
        done += 1
        q = lift_nonneg_to_stochastic(m).lifted
        sums = all(s == 1 for s in q.row_sums()) and all(s == 1 for s in q.col_sums())
        equiv = classify_matrix(q).stochastic == classify_matrix(m).nonnegative
        good += sums and equiv and q @ q == lifted_square(m)
    return good == count, f"{good}/{count} lifts satisfy all identities"


def sweep_cptp(rng: random.Random, count: int = 200) -> tuple[bool, str]:
    cptp_ok = agree = done = 0
    while done < count:
        p = random_stochastic(rng, rng.randint(2, 4))
        if rng.random() < 0.5:
            p = p @ p
        if spectral_gap(p.to_numpy()) < 1e-6:
            continue
        done += 1
        b = emb(p)
        cptp_ok += is_cptp(b).cptp
        try:
            agree += (find_cptp_root(b) is not None) == (find_stochastic_root(p) is not None)
        except DegenerateSpectrum:
            pass
    traces = 0
    for _ in range(count):
        a = random_rational_matrix(rng, rng.randint(1, 4))
        t = partial_trace(choi(emb(a)))
        rs = a.row_sums()
        traces += t == RationalMatrix(tuple(tuple(rs[i] if i == k else F(0) for k in range(a.dim))
                                            for i in range(a.dim)))
    ok = cptp_ok == count and agree == count and traces == count
    return ok, f"{cptp_ok}/{count} embeddings CPTP, {agree}/{count} root verdicts agree, {traces}/{count} traces exact"


def random_sat(rng: random.Random, max_v: int = 4, max_c: int = 4) -> SatInstance:
    n_v = rng.randint(3, max_v)
    n_c = rng.randint(1, max_c)
    return SatInstance(n_v, tuple(tuple(rng.sample(range(1, n_v + 1), 3)) for _ in range(n_c)))


def structured_sat() -> list[SatInstance]:
    """Every nonempty set of distinct triples over four variables."""
    triples = list(itertools.combinations(range(1, 5), 3))
    return [SatInstance(4, sub) for r in range(1, 5) for sub in itertools.combinations(triples, r)]


def sweep_sat(rng: random.Random, count: int = 100) -> tuple[bool, str]:
    insts = [random_sat(rng) for _ in range(count)] + [PARITY_INSTANCE]
    agree = unsat = 0
    for inst in insts:
        rep = check_instance(inst)
        agree += rep.agree
        unsat += not rep.oracle_verdict
    par = check_instance(PARITY_INSTANCE)
    ok = agree == len(insts) and not par.encoder_verdict and not par.oracle_verdict
    return ok, f"{agree}/{len(insts)} agree ({unsat} unsatisfiable), parity instance no/no: {ok}"


def sweep_reductions(rng: random.Random, count: int = 200) -> tuple[bool, str]:
    def elements(k):
        return tuple(_rand_q(rng, -10, 10, 2) for _ in range(k))

    tallies = {}
    ok = 0
    for _ in range(count):
        s = SubsetSumInstance(elements(rng.randint(1, 10)), F(rng.randint(0, 12), 2))
        ok += solve_subset_variant(s, include_empty=True).answer == solve_subset_variant(pad_to_even(s)).answer
    tallies["pad_to_even"] = ok
    ok = 0
    for _ in range(count):
        variant = rng.choice(("plain", "even", "m", "signed_m"))
        n = rng.randint(1, 5) * 2 if variant == "even" else rng.randint(1, 10)
        m = rng.randint(1, n) if variant in ("m", "signed_m") else None
        x = y = None
        if variant == "signed_m":
            x, y = sorted((_rand_q(rng, -10, 10), _rand_q(rng, -10, 10)))
        s = SubsetSumInstance(elements(n), F(rng.randint(0, 12), 2), variant, m, x, y)
        a = _rand_q(rng, -3, 3) or F(1)
        c = _rand_q(rng, -3, 3) if variant == "even" else F(0)
        t = rescale_instance(s, a, c)
        ok += solve_subset_variant(s).answer == solve_subset_variant(t).answer
    tallies["rescale_instance"] = ok
    ok = 0
    for _ in range(count):
        p = PartitionInstance(tuple(F(rng.randint(1, 12), rng.randint(1, 2)) for _ in range(rng.randint(1, 9))))
        ok += partition_oracle(p).answer == solve_subset_variant(partition_to_subset_sum(p)).answer
    tallies["partition_to_subset_sum"] = ok
    ok = done = 0
    while done < count:
        n = rng.randint(2, 10)
        m = rng.randint(1, n - 1)
        if 2 * m == n:
            continue
        done += 1
        s = SubsetSumInstance(elements(n), F(rng.randint(0, 12), 2), "m", m)
        ok += solve_subset_variant(s).answer == evaluate_m_program(subset_sum_m_program(s, m))
    tallies["subset_sum_m_program"] = ok
    passed = all(v == count for v in tallies.values())
    return passed, ", ".join(f"{k} {v}/{count}" for k, v in tallies.items())


SWEEPS: dict[int, tuple[str, Callable[..., tuple[bool, str]]]] = {
    1: ("exact divisibility", sweep_divisibility),
    2: ("uniform dice", sweep_uniform),
    3: ("eps-divisibility vs grid", sweep_eps),
    4: ("even subset sum encoder", sweep_even_encoder),
    5: ("counterexample family", sweep_counterexample),
    6: ("stochastic roots", sweep_roots),
    7: ("lift identities", sweep_lift),
    8: ("CPTP equivalence", sweep_cptp),
    9: ("SAT embedding", sweep_sat),
    10: ("subset sum reductions", sweep_reductions),
}


def run_sweep(criterion: int, seed: int = 0) -> SweepResult:
    name, fn = SWEEPS[criterion]
    rng = random.Random(seed * 1000 + criterion)
    start = time.perf_counter()
    passed, detail = fn(rng)
    return SweepResult(criterion, name, passed, detail, time.perf_counter() - start)


def run_all(seed: int = 0, criteria: Optional[Sequence[int]] = None) -> list[SweepResult]:
    return [run_sweep(c, seed) for c in (criteria or sorted(SWEEPS))]
