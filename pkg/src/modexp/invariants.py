"""Arithmetic invariants of X(N p^r) and the exponent bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .arith import euler_phi, nu_p, rat_str, require_prime
from .xcurve import A, ComponentLabel, t_labels, tinv_closed_matrix, tinv_oracle, tinv_rowsum


def sl2_order(M: int) -> int:
    """Order of SL_2(Z/M)."""
    if M < 2:
        raise ValueError("M must be at least 2")
    total, m, d = 1, M, 2
    while m > 1:
        if m % d == 0:
            r = 0
            while m % d == 0:
                m //= d
                r += 1
            total *= d ** (3 * r) - d ** (3 * r - 2)
        d += 1
    return total


def num_cusps(M: int) -> int:
    if M < 3:
        raise ValueError("M must be at least 3")
    return sl2_order(M) // (2 * M)


def _check_level(N: int, p: int) -> None:
    require_prime(p)
    if N < 3:
        raise ValueError("N must be at least 3")
    if N % p == 0:
        raise ValueError(f"p={p} divides N={N}")


def _check_r(r: int) -> None:
    if r < 1:
        raise ValueError("r must be at least 1")


def deg_ss(N: int, p: int) -> Fraction:
    """Degree of the supersingular locus of X(N) in characteristic p."""
    _check_level(N, p)
    return Fraction((p - 1) * sl2_order(N), 24)


def cusps_per_component(N: int, p: int, r: int) -> int:
    _check_level(N, p)
    _check_r(r)
    return euler_phi(p**r) * num_cusps(N)


def deg_omega_2k_restricted(N: int, p: int, r: int, k: int) -> Fraction:
    """Degree of omega^(2k) on one component of the special fiber."""
    _check_level(N, p)
    _check_r(r)
    return Fraction(k * sl2_order(N) * (p - 1) * p ** (2 * r - 1), 12)


def deg_cusp_sheaf_restricted(N: int, p: int, r: int, k: int) -> Fraction:
    """Same for the cusp-form sheaf omega^(2k)(-cusps)."""
    _check_level(N, p)
    _check_r(r)
    return k * sl2_order(N) * (p - 1) * (Fraction(p ** (2 * r - 1), 12) - Fraction(p ** (r - 1), 2 * N))


def deg_dualizing_restricted(N: int, p: int, r: int) -> Fraction:
    """Degree of the relative dualizing sheaf on one component."""
    _check_level(N, p)
    _check_r(r)
    phi = euler_phi(p**r)
    return (Fraction(p**r * phi * sl2_order(N), 24) - phi * num_cusps(N)
            + deg_ss(N, p) * p ** (2 * r - 1))


def upper_bound_per_component(p: int, r: int, k: int, label: ComponentLabel) -> int:
    """Bound on -valuation along one component relative to the component of infinity."""
    require_prime(p)
    _check_r(r)
    label.validate(p, r)
    if label == A(0):
        raise ValueError("A(0) is the reference component")
    bound = 2 * k * p ** (r - 1) * (p * r - r + 1)
    if label.kind == "A":
        bound -= 2 * k * p ** (r - 1) * (p - 1) * nu_p(label.index, p)
    return bound


def exponent_upper(p: int, r: int, k: int) -> int:
    require_prime(p)
    _check_r(r)
    if k < 1:
        raise ValueError("k must be at least 1")
    return 2 * k * p ** (r - 1) * (p * r - r + 1)


def upper_bounds_via_matrix(p: int, r: int, N: int, k: int, oracle: bool = True) -> dict[ComponentLabel, Fraction]:
    """Per-component bounds -sum_j deg(omega^(2k)|j) c^(i,j), using an explicit T^-1.

    The inverse is either Gaussian elimination on T or the assembled closed form;
    in both cases it is normalized by deg S, which is divided back out here.
    """
    inv = tinv_oracle(p, r) if oracle else tinv_closed_matrix(p, r)
    deg = deg_omega_2k_restricted(N, p, r, k)
    degS = deg_ss(N, p)
    sums = inv.row_sums()
    return {lab: -deg * s / degS for lab, s in zip(t_labels(p, r), sums)}


def cusp_form_upper(N: int, p: int, r: int, k: int) -> Fraction:
    _check_level(N, p)
    _check_r(r)
    h = p * r - r + 1
    return 2 * k * p ** (r - 1) * h - Fraction(12 * k, N * p) * h


def edixhoven_bound(N: int, p: int, r: int) -> Fraction:
    _check_level(N, p)
    _check_r(r)
    return 2 * p ** (2 * r - 1) - Fraction(12 * p ** (r - 1), N)


@dataclass
class ExponentReport:
    p: int
    r: int
    N: int
    k: int
    upper: int
    lower: Optional[int]
    exact: Optional[int]
    perComponent: dict
    cuspFormUpper: Fraction
    edixhovenBound: Fraction
    note: Optional[str] = None
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "N": self.N,
            "k": self.k,
            "upper": self.upper,
            "lower": self.lower,
            "exact": self.exact,
            "perComponent": {str(lab): rat_str(v) for lab, v in self.perComponent.items()},
            "cuspFormUpper": rat_str(self.cuspFormUpper),
            "edixhovenBound": rat_str(self.edixhovenBound),
            "note": self.note,
            "certificate": self.certificate,
        }


def exponent_exact(p: int, r: int, N: int, k: int) -> ExponentReport:
    """Upper bound, Klein-form lower bound and their agreement."""
    from .klein import lower_bound_certificate

    _check_level(N, p)
    _check_r(r)
    if k < 1:
        raise ValueError("k must be at least 1")
    upper = exponent_upper(p, r, k)
    per = {lab: Fraction(upper_bound_per_component(p, r, k, lab)) for lab in t_labels(p, r)}
    lower = exact = None
    note = None
    certificate: dict = {}
    if p**r > 3:
        lower, certificate = lower_bound_certificate(p, r, k)
        if lower == upper:
            exact = upper
    else:
        note = "lower bound unavailable: no Klein-form construction at level 2 or 3"
    return ExponentReport(p, r, N, k, upper, lower, exact, per,
                          cusp_form_upper(N, p, r, k), edixhoven_bound(N, p, r), note, certificate)


def tinv_rowsum_bound(p: int, r: int, k: int, label: ComponentLabel) -> Fraction:
    """Per-component bound written through the closed-form row sum."""
    return -2 * k * p ** (2 * r - 1) * tinv_rowsum(p, r, label)

