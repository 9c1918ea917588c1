"""Self-check suites run by `modexp verify`.

Each check compares a closed form or fast path with an independent slower
computation and reports PASS/FAIL with its wall time.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import arith, invariants, klein, linalg, xcurve
from .arith import CycElt
from .linalg import Circulant, Mat, gauss_inverse

GRID = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]
SMALL_LEVELS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]  # p^r <= 9
EXPONENT_LEVELS = [(5, 1), (7, 1), (11, 1), (2, 2), (2, 3), (3, 2)]
KLEIN_LEVELS = [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (2, 4), (5, 2)]
SEED = 20240611


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    seconds: float
    detail: str = ""


def _prime_powers(limit: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, limit + 1):
        if arith.is_prime(p):
            r = 1
            while p**r <= limit:
                out.append((p, r))
                r += 1
    return out


def _random_rat(rng: random.Random, lo: int = -6, hi: int = 6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 4))


def _random_mat(rng: random.Random, rows: int, cols: int) -> Mat:
    return Mat(rows, cols, tuple(_random_rat(rng) for _ in range(rows * cols)))


def _random_invertible(rng: random.Random, n: int) -> tuple[Mat, Mat]:
    while True:
        m = _random_mat(rng, n, n)
        try:
            return m, gauss_inverse(m)
        except ZeroDivisionError:
            continue


class CheckFailed(AssertionError):
    pass


def _require(condition, context=None) -> None:
    if not condition:
        raise CheckFailed(f"mismatch at {context!r}" if context is not None else "mismatch")


# arith

def check_sums() -> str:
    for p, r in _prime_powers(27):
        _require(arith.sum_p2vp(p, r) == arith.sum_p2vp_bruteforce(p, r), (p, r))
        _require(arith.sum_nup(p, r) == arith.sum_nup_bruteforce(p, r), (p, r))
        for i in range(1, p**r):
            _require(arith.sum_nup_shifted(p, r, i) == arith.sum_nup_shifted_bruteforce(p, r, i), (p, r, i))
        for J in range(1, 2 * p**r + 1):
            _require(arith.root_of_unity_sum(p, r, J) == arith.root_of_unity_sum_bruteforce(p, r, J), (p, r, J))
    return "all prime powers up to 27"


def check_pi_valuation() -> str:
    rng = random.Random(SEED)
    levels = [(2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
    for _ in range(200):
        p, r = rng.choice(levels)
        n = p**r
        deg = arith.euler_phi(n)
        x = y = CycElt.zero(n)
        while x.is_zero():
            x = CycElt(n, [rng.randint(-9, 9) for _ in range(deg)])
        while y.is_zero():
            y = CycElt(n, [rng.randint(-9, 9) for _ in range(deg)])
        vx, vy = arith.pi_valuation(x, p, r), arith.pi_valuation(y, p, r)
        _require(arith.pi_valuation(x * y, p, r) == vx + vy)
    for p, r in _prime_powers(27):
        for t in range(1, p**r):
            v = arith.pi_valuation(1 - CycElt.zeta(p**r, t), p, r)
            _require(v == p ** arith.nu_p(t, p), (p, r, t))
    return "200 random products; 1 - zeta^t at every level up to 27"


def check_cyc_inverse() -> str:
    rng = random.Random(SEED + 1)
    for _ in range(100):
        n = rng.randint(2, 16)
        x = CycElt(n, [_random_rat(rng) for _ in range(arith.euler_phi(n))])
        if x.is_zero():
            continue
        _require(x * x.inv() == 1)
    return "100 random elements"


# linalg

def check_circulants() -> str:
    rng = random.Random(SEED + 2)
    count = 0
    for _ in range(60):
        n = rng.randint(1, 12)
        c = Circulant(tuple(_random_rat(rng) for _ in range(n)))
        dense = c.materialize()
        try:
            inv = linalg.circ_inverse(c)
        except ZeroDivisionError:
            continue
        _require((inv.materialize() @ dense) == Mat.identity(n))
        j = rng.randint(1, n)
        lam, vec = linalg.circ_eigen(c, j)
        for i in range(n):
            lhs = CycElt.zero(n)
            for k in range(n):
                lhs = lhs + vec[k] * dense[i, k]
            _require(lhs == lam * vec[i])
        count += 1
    return f"{count} invertible circulants"


def check_update_formulas() -> str:
    rng = random.Random(SEED + 3)
    for _ in range(100):
        a, a_inv = _random_invertible(rng, 4)
        u, v = _random_mat(rng, 4, 2), _random_mat(rng, 2, 4)
        c, c_inv = _random_invertible(rng, 2)
        target = a + u @ c @ v
        try:
            expected = gauss_inverse(target)
        except ZeroDivisionError:
            continue
        _require(linalg.woodbury(a_inv, u, c_inv, v) == expected)
    done = 0
    while done < 100:
        a, a_inv = _random_invertible(rng, 5)
        s, t = rng.randint(1, 5), rng.randint(1, 5)
        if a_inv[t - 1, s - 1] == 0:
            continue
        _require(linalg.minor_removed_inverse(a_inv, s, t) == gauss_inverse(a.delete(s - 1, t - 1)))
        done += 1
    done = 0
    while done < 100:
        a, a_inv = _random_invertible(rng, 3)
        b, b_inv = _random_invertible(rng, 2)
        whole = linalg.block([[a, Mat.ones(3, 2)], [Mat.ones(2, 3), b]])
        try:
            expected = gauss_inverse(whole)
        except ZeroDivisionError:
            continue
        _require(linalg.block_ones_inverse(a_inv, b_inv) == expected)
        done += 1
    return "woodbury, minor removal and block formula on 100 instances each"


# xcurve

def check_intersections() -> str:
    for p, r in SMALL_LEVELS:
        ls = xcurve.labels(p, r)
        for x in ls:
            for y in ls:
                _require(xcurve.local_intersection(x, y, p, r) == xcurve.local_intersection_bruteforce(x, y, p, r), (p, r, x, y))
        _require(xcurve.build_M(p, r) == xcurve.build_M_from_labels(p, r))
    return "all label pairs with p^r <= 9"


def check_kernel_and_spectrum() -> str:
    for p, r in GRID:
        m = xcurve.build_M(p, r)
        _require(m @ Mat.ones(m.cols, 1) == Mat.zeros(m.rows, 1))
        _require(m == m.transpose())
    for p, r in SMALL_LEVELS:
        c = xcurve.circulant_M(p, r)
        for j in range(1, p**r + 1):
            lam, _ = linalg.circ_eigen(c, j)
            _require(lam == xcurve.eigenvalue_closed(p, r, j), (p, r, j))
    return "M 1 = 0 and eigenvalues of M(p^r)"


def check_tinv() -> str:
    for p, r in GRID:
        t = xcurve.build_T(p, r)
        closed = xcurve.tinv_closed_matrix(p, r)
        _require(closed @ t == Mat.identity(t.rows), (p, r))
        _require(closed == gauss_inverse(t), (p, r))
        _require(all(x < 0 for x in closed.entries), (p, r))
        q = p**r
        mi = gauss_inverse(xcurve.circulant_M(p, r).materialize())
        m11 = gauss_inverse(xcurve.circulant_M(p, r).materialize().delete(0, 0))
        for i in range(q):
            for j in range(q):
                _require(mi[i, j] == xcurve.m_inverse_closed(p, r, i + 1, j + 1))
                if i < q - 1 and j < q - 1:
                    _require(m11[i, j] == xcurve.m11_inverse_closed(p, r, i + 1, j + 1))
    return "closed forms equal Gaussian elimination, all entries negative"


def check_rowsums() -> str:
    for p, r in GRID:
        sums = gauss_inverse(xcurve.build_T(p, r)).row_sums()
        for label, s in zip(xcurve.t_labels(p, r), sums):
            _require(xcurve.tinv_rowsum(p, r, label) == s, (p, r, label))
    _require(all(s == -1 for s in gauss_inverse(xcurve.build_T(5, 1)).row_sums()))
    return "closed row sums equal oracle row sums"


# invariants

def check_degrees() -> str:
    for N in (3, 4, 5, 7):
        for p, r in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]:
            if N % p == 0:
                continue
            lhs = invariants.deg_omega_2k_restricted(N, p, r, 1)
            rhs = invariants.deg_dualizing_restricted(N, p, r) + invariants.cusps_per_component(N, p, r)
            _require(lhs == rhs, (N, p, r))
            comps = p**r + p ** (r - 1)
            _require(invariants.cusps_per_component(N, p, r) * comps == invariants.num_cusps(N * p**r))
    return "deg omega^2 = deg Omega + cusps on the (N, p^r) grid"


def check_bound_paths() -> str:
    for p, r in GRID:
        N = next(n for n in (3, 4, 5, 7) if n % p)
        for k in (1, 2):
            via_matrix = invariants.upper_bounds_via_matrix(p, r, N, k)
            for label, value in via_matrix.items():
                _require(value == invariants.upper_bound_per_component(p, r, k, label))
            _require(max(via_matrix.values()) == invariants.exponent_upper(p, r, k))
    return "matrix route equals closed per-component bounds"


# klein

def check_klein_certificates() -> str:
    for p, r in KLEIN_LEVELS:
        f = klein.standard_family(p, r)
        _require(f.weight == 2)
        _require(klein.check_congruence(f) and klein.is_holomorphic(f), (p, r))
        _require(klein.valuation_at_zero(f) == klein.valuation_at_zero_pi(f), (p, r))
        series = klein.qexp_infinity(f, 30)
        _require(all(c.denominator == 1 for c in series.coeffs))
        _require(klein.cusp_order(f, klein.CuspClass(f.n, 1)) == series.leading_exponent)
    return f"standard families at levels {[p**r for p, r in KLEIN_LEVELS]}"


def check_exponents() -> str:
    for p, r in EXPONENT_LEVELS:
        N = next(n for n in (3, 4, 5, 7) if n % p)
        for k in (1, 2):
            rep = invariants.exponent_exact(p, r, N, k)
            expected = 2 * k * p ** (r - 1) * (p * r - r + 1)
            _require(rep.exact == expected == rep.upper == rep.lower, (p, r, k))
            cert = rep.certificate
            _require(cert["valuationAtZero"] == cert["valuationAtZeroPi"] == -invariants.exponent_upper(p, r, 1))
    return "exact exponent 2k p^(r-1)(pr - r + 1) certified"


SUITES: dict[str, list[tuple[str, Callable[[], str]]]] = {
    "arith": [("number-theoretic sums", check_sums),
              ("pi-adic valuation", check_pi_valuation),
              ("cyclotomic inverse", check_cyc_inverse)],
    "linalg": [("circulant inverse and eigenpairs", check_circulants),
               ("update formulas", check_update_formulas)],
    "xcurve": [("intersection numbers", check_intersections),
               ("kernel and spectrum", check_kernel_and_spectrum),
               ("closed-form inverses", check_tinv),
               ("row sums", check_rowsums)],
    "invariants": [("degree consistency", check_degrees),
                   ("bound paths", check_bound_paths)],
    "klein": [("standard families", check_klein_certificates),
              ("exact exponents", check_exponents)],
}


def run_suite(name: str) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        for label, fn in SUITES[suite]:
            start = time.perf_counter()
            try:
                detail = fn()
                ok = True
            except Exception as exc:  # report, don't abort the remaining checks
                detail = f"{type(exc).__name__}: {exc}"
                ok = False
            results.append(CheckResult(suite, label, ok, time.perf_counter() - start, detail))
    return results
