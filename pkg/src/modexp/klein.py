"""Products of Klein forms: validity, cusp orders, q-expansions and valuations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Mapping

from . import kernels
from .arith import CycElt, euler_phi, nu_p, pi_valuation, prime_power, rat_str

SEARCH_CAP = 20_000_000
MAX_SUPPORT = 4
MAX_COEFF = 6


@dataclass(frozen=True)
class KleinFamily:
    """Exponents m(t), 1 <= t < n, of a product of Klein forms kappa_(t/n, 0)(n tau)."""

    n: int
    m: tuple  # sorted (t, m(t)) pairs with m(t) != 0

    def __init__(self, n: int, m: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if n < 2:
            raise ValueError("level must be at least 2")
        items = dict(m.items() if isinstance(m, Mapping) else m)
        for t in items:
            if not 1 <= t <= n - 1:
                raise ValueError(f"t={t} outside 1..{n - 1}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", tuple(sorted((t, int(e)) for t, e in items.items() if e)))

    @classmethod
    def parse(cls, n: int, text: str) -> KleinFamily:
        """Read "t:m,t:m,..."."""
        pairs = {}
        for chunk in text.replace(" ", "").split(","):
            if not chunk:
                continue
            t, _, e = chunk.partition(":")
            if not _:
                raise ValueError(f"expected t:m, got {chunk!r}")
            t, e = int(t), int(e)
            pairs[t] = pairs.get(t, 0) + e
        return cls(n, pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.m)

    @property
    def weight(self) -> int:
        return -sum(e for _, e in self.m)

    def __str__(self) -> str:
        return ",".join(f"{t}:{e}" for t, e in self.m)


@dataclass(frozen=True)
class CuspClass:
    """Cusp of Gamma(n) up to the order formula: g = gcd(c, n) and a mod g."""

    g: int
    a: int

    def __str__(self) -> str:
        return f"(g={self.g}, a={self.a})"


@dataclass(frozen=True)
class QSeries:
    """Truncated series sum coeffs[i] q^(leading_exponent + i/denominator)."""

    denominator: int
    leading_exponent: Fraction
    coeffs: tuple
    truncation: int

    def to_json(self) -> dict:
        def enc(c):
            return c.serialize() if isinstance(c, CycElt) else rat_str(c)

        return {
            "denominatorD": self.denominator,
            "leadingExponent": rat_str(self.leading_exponent),
            "coeffs": [enc(c) for c in self.coeffs],
            "truncationLength": self.truncation,
        }


def check_congruence(f: KleinFamily) -> bool:
    total = sum(e * t * t for t, e in f.m)
    return total % (gcd(2, f.n) * f.n) == 0


def cusp_classes(n: int) -> list[CuspClass]:
    out = []
    for g in range(1, n + 1):
        if n % g:
            continue
        if g <= 2:
            out.append(CuspClass(g, 1))
        else:
            out.extend(CuspClass(g, a) for a in range(1, g) if gcd(a, g) == 1)
    return out


def _order_numerator(t: int, c: CuspClass) -> int:
    # g^2 <x/g>(<x/g> - 1) with x = a t mod g
    x = (c.a * t) % c.g
    return x * (x - c.g)


def cusp_order(f: KleinFamily, c: CuspClass) -> Fraction:
    """q-order of the product at the cusp class c."""
    if f.n % c.g or gcd(c.a, c.g) != 1:
        raise ValueError(f"invalid cusp class {c} for level {f.n}")
    return Fraction(sum(e * _order_numerator(t, c) for t, e in f.m), 2 * f.n)


def is_holomorphic(f: KleinFamily) -> bool:
    return all(cusp_order(f, c) >= 0 for c in cusp_classes(f.n))


def order_profile(f: KleinFamily, x: Fraction) -> Fraction:
    """sum m(t) <t x>(<t x> - 1); the cusp order is a positive multiple of this."""
    x = Fraction(x)
    total = Fraction(0)
    for t, e in f.m:
        frac = (t * x) % 1
        total += e * frac * (frac - 1)
    return total


def standard_family(p: int, r: int) -> KleinFamily:
    """Weight-2 family used for the lower bound at level p^r."""
    n = p**r
    if n <= 3:
        raise ValueError("no construction known for level 2 or 3")
    if r >= 2:
        return KleinFamily(n, {1: 2, p ** (r - 1): -2, n - 1: -2})
    if p == 5:
        return KleinFamily(n, {1: 4, 2: -2, 3: -4})
    return KleinFamily(n, {3: -2, 4: -2, 5: 2})


def _leading_exponent_infinity(f: KleinFamily) -> Fraction:
    return Fraction(sum(e * t * (t - f.n) for t, e in f.m), 2 * f.n)


def _infinity_factors(f: KleinFamily, trunc: int) -> list[tuple[int, int]]:
    n = f.n
    factors = []
    for t, e in f.m:
        factors.append((t, e))
        k = 1
        while n * k - t < trunc:
            factors.append((n * k + t, e))
            factors.append((n * k - t, e))
            factors.append((n * k, -2 * e))
            k += 1
    return factors


def qexp_infinity(f: KleinFamily, trunc: int) -> QSeries:
    """Expansion at infinity of prod kappa_(t/n,0)(n tau)^m(t) in powers of q."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    lead = _leading_exponent_infinity(f)
    coeffs = kernels.series_power_product(trunc, _infinity_factors(f, trunc))
    den = lead.denominator
    if den == 1:
        return QSeries(1, lead, tuple(Fraction(c) for c in coeffs), trunc)
    padded = []
    for c in coeffs:
        padded.append(Fraction(c))
        padded.extend([Fraction(0)] * (den - 1))
    padded = padded[:trunc * den - (den - 1)]
    return QSeries(den, lead, tuple(padded), len(padded))


def leading_coefficient_at_zero(f: KleinFamily) -> CycElt:
    """n^(-w) prod (1 - zeta_n^(-t))^m(t), the constant term at the cusp 0 up to a unit."""
    n = f.n
    out = CycElt.const(n, Fraction(1, n) ** f.weight)
    for t, e in f.m:
        out = out * (1 - CycElt.zeta(n, -t)) ** e
    return out


def _zero_factors(f: KleinFamily, trunc: int) -> list[tuple[int, int, int]]:
    factors = []
    for t, e in f.m:
        for k in range(1, trunc):
            factors.append((k, -t, e))
            factors.append((k, t, e))
            factors.append((k, 0, -2 * e))
    return factors


def qexp_zero(f: KleinFamily, trunc: int) -> QSeries:
    """Expansion at the cusp 0 in powers of q^(1/n), unit prefactors dropped."""
    if trunc < 1:
        raise ValueError("truncation must be at least 1")
    n = f.n
    lead = leading_coefficient_at_zero(f)
    rows = kernels.cyclotomic_series_product(n, trunc, _zero_factors(f, trunc))
    coeffs = tuple(lead * CycElt(n, row) for row in rows)
    return QSeries(n, Fraction(0), coeffs, trunc)


def _level(f: KleinFamily) -> tuple[int, int]:
    pr = prime_power(f.n)
    if pr is None:
        raise ValueError(f"level {f.n} is not a prime power")
    return pr


def valuation_at_zero(f: KleinFamily) -> int:
    """pi-adic valuation of the expansion at 0: -w r phi(p^r) + sum m(t) p^nu_p(t)."""
    p, r = _level(f)
    if not f.m:
        raise ValueError("degenerate family")
    return -f.weight * r * euler_phi(p**r) + sum(e * p ** nu_p(t, p) for t, e in f.m)


def valuation_at_zero_pi(f: KleinFamily) -> int:
    """Same valuation from the explicit leading cyclotomic coefficient."""
    p, r = _level(f)
    if not f.m:
        raise ValueError("degenerate family")
    return pi_valuation(leading_coefficient_at_zero(f), p, r)


def valuation_at_zero_series(f: KleinFamily, trunc: int) -> int:
    """Minimum pi-adic valuation over the coefficients of qexp_zero."""
    p, r = _level(f)
    series = qexp_zero(f, trunc)
    return min(pi_valuation(c, p, r) for c in series.coeffs if not c.is_zero())


def lower_bound(p: int, r: int, k: int) -> int:
    return lower_bound_certificate(p, r, k)[0]


def lower_bound_certificate(p: int, r: int, k: int) -> tuple[int, dict]:
    """-k times the valuation at 0 of the standard family, with its checks."""
    if k < 1:
        raise ValueError("k must be at least 1")
    f = standard_family(p, r)
    closed = valuation_at_zero(f)
    via_pi = valuation_at_zero_pi(f)
    cert = {
        "family": str(f),
        "level": f.n,
        "weight": f.weight,
        "congruence": check_congruence(f),
        "holomorphic": is_holomorphic(f),
        "valuationAtZero": closed,
        "valuationAtZeroPi": via_pi,
    }
    if closed != via_pi:
        cert["discrepancy"] = "closed-form valuation disagrees with the resultant path"
    if not (cert["congruence"] and cert["holomorphic"]):
        raise ArithmeticError(f"standard family {f} failed certification")
    # the resultant path is authoritative
    return -k * via_pi, cert


def search_space_size(n: int, max_support: int, max_coeff: int) -> int:
    return sum(comb(n - 1, s) * (2 * max_coeff) ** (s - 1) for s in range(1, max_support + 1))


def search_families(n: int, max_support: int, max_coeff: int) -> list[KleinFamily]:
    """Weight-2 holomorphic families within the bounds, lowest valuation at 0 first."""
    if n < 4:
        raise ValueError("level must be at least 4")
    if max_support < 1 or max_coeff < 1:
        raise ValueError("bounds must be positive")
    if (max_support > MAX_SUPPORT or max_coeff > MAX_COEFF
            or search_space_size(n, max_support, max_coeff) > SEARCH_CAP):
        raise ValueError("search space cap exceeded")
    classes = cusp_classes(n)
    table = [[_order_numerator(t, c) for t in range(n)] for c in classes]
    hits = kernels.search_weight_two(n, max_support, max_coeff, table, gcd(2, n) * n)
    fams = [KleinFamily(n, zip(support, coeffs)) for support, coeffs in hits]
    if prime_power(n) is not None:
        fams.sort(key=lambda f: (valuation_at_zero(f), f.m))
    else:
        fams.sort(key=lambda f: f.m)
    return fams


def cusp_order_table(f: KleinFamily) -> list[tuple[CuspClass, Fraction]]:
    return [(c, cusp_order(f, c)) for c in cusp_classes(f.n)]

