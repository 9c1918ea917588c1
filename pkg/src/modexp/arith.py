"""Exact integers, rationals, p-adic valuations and cyclotomic arithmetic."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

Rat = Fraction

# Valuation of zero.
INFINITY = float("inf")


def rat(x) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p must be prime, got {p!r}")


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, r) with n = p**r, or None when n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    r = 0
    m = n
    while m % p == 0:
        m //= p
        r += 1
    return (p, r) if m == 1 else None


def euler_phi(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _nu_int(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def nu_p(x, p: int) -> int:
    """Exponent of p in the nonzero rational x."""
    x = rat(x)
    if x == 0:
        raise ValueError("valuation of zero")
    return _nu_int(abs(x.numerator), p) - _nu_int(x.denominator, p)


def nu_p_residue(i: int, p: int, r: int) -> int:
    """p-adic valuation of the class of i in Z/p^r, in [0, r-1]."""
    q = p**r
    i %= q
    if i == 0:
        raise ValueError(f"residue is zero modulo {p}^{r}")
    return _nu_int(i, p)


def sum_p2vp(p: int, r: int) -> int:
    """Sum of p^(2 nu_p(a)) over nonzero residues a mod p^r."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return p ** (2 * r - 1) - p ** (r - 1)


def sum_nup(p: int, r: int) -> int:
    """Sum of nu_p(m) for 1 <= m < p^r."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return (p**r - p * r + r - 1) // (p - 1)


def sum_nup_shifted(p: int, r: int, i: int) -> int:
    """Sum of nu_p((j - i) mod p^r) over 1 <= j < p^r with j != i."""
    if not 1 <= i <= p**r - 1:
        raise ValueError(f"index {i} outside 1..{p**r - 1}")
    return sum_nup(p, r) - nu_p_residue(i, p, r)


def root_of_unity_sum(p: int, N: int, J: int) -> int:
    """Sum of zeta_{p^N}^(-uJ) over units u mod p^N (always an integer)."""
    if N < 1 or J < 1:
        raise ValueError("N and J must be positive")
    if J % p ** (N - 1):
        return 0
    if J % p**N:
        return -(p ** (N - 1))
    return p**N - p ** (N - 1)


# Brute-force counterparts used as test oracles and by the verify suites.

def sum_p2vp_bruteforce(p: int, r: int) -> int:
    return sum(p ** (2 * nu_p_residue(a, p, r)) for a in range(1, p**r))


def sum_nup_bruteforce(p: int, r: int) -> int:
    return sum(nu_p(m, p) for m in range(1, p**r))


def sum_nup_shifted_bruteforce(p: int, r: int, i: int) -> int:
    q = p**r
    return sum(nu_p_residue(j - i, p, r) for j in range(1, q) if j != i)


def root_of_unity_sum_bruteforce(p: int, N: int, J: int) -> int:
    n = p**N
    total = CycElt.zero(n)
    for u in range(1, n):
        if u % p:
            total = total + CycElt.zeta(n, -u * J)
    value = total.to_rational()
    if value.denominator != 1:
        raise ArithmeticError("root of unity sum is not an integer")
    return value.numerator


# Dense univariate polynomials over Q, low degree first.

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = _trim([rat(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim([rat(x) for x in a])
    if len(rem) < len(b):
        return [], rem
    quo = [Fraction(0)] * (len(rem) - len(b) + 1)
    lead = b[-1]
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        quo[shift] = factor
        for i, y in enumerate(b):
            rem[shift + i] -= factor * y
        rem.pop()
        _trim(rem)
    return _trim(quo), rem


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in divisors(n)[:-1]:
        num, rem = poly_divmod(num, cyclotomic_poly(d))
        assert not rem
    return tuple(int(c) for c in num)


def resultant(a: Sequence, b: Sequence) -> Fraction:
    """Resultant of two polynomials over Q via the Euclidean remainder sequence."""
    a = _trim([rat(x) for x in a])
    b = _trim([rat(x) for x in b])
    if not a or not b:
        return Fraction(0)
    result = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return result * b[0] ** da
        if da < db:
            if da * db % 2:
                result = -result
            a, b = b, a
            continue
        _, rem = poly_divmod(a, b)
        if not rem:
            return Fraction(0)
        # res(a, b) = (-1)^(da*db) lc(b)^(da - deg rem) res(b, rem)
        dr = len(rem) - 1
        if da * db % 2:
            result = -result
        result *= b[-1] ** (da - dr)
        a, b = b, rem


class CycElt:
    """Element of Q(zeta_n) stored as phi(n) coefficients reduced modulo Phi_n."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Iterable):
        if n < 1:
            raise ValueError("modulus must be positive")
        deg = euler_phi(n)
        cs = [rat(c) for c in coeffs]
        if len(cs) > deg:
            _, cs = poly_divmod(cs, cyclotomic_poly(n))
        cs = list(cs) + [Fraction(0)] * (deg - len(cs))
        self.n = n
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, n: int) -> CycElt:
        return cls(n, [])

    @classmethod
    def const(cls, n: int, value) -> CycElt:
        return cls(n, [rat(value)])

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> CycElt:
        power %= n
        return cls(n, [0] * power + [1])

    def _check(self, other: CycElt) -> None:
        if self.n != other.n:
            raise ValueError(f"modulus mismatch: {self.n} vs {other.n}")

    def _lift(self, other) -> CycElt:
        if isinstance(other, CycElt):
            self._check(other)
            return other
        return CycElt.const(self.n, other)

    def __add__(self, other) -> CycElt:
        other = self._lift(other)
        return CycElt(self.n, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CycElt:
        return CycElt(self.n, [-x for x in self.coeffs])

    def __sub__(self, other) -> CycElt:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> CycElt:
        return self._lift(other) - self

    def __mul__(self, other) -> CycElt:
        if not isinstance(other, CycElt):
            c = rat(other)
            return CycElt(self.n, [x * c for x in self.coeffs])
        self._check(other)
        return CycElt(self.n, poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycElt:
        if isinstance(other, CycElt):
            return self * other.inv()
        return self * (1 / rat(other))

    def __pow__(self, e: int) -> CycElt:
        if e < 0:
            return self.inv() ** (-e)
        result, base = CycElt.const(self.n, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inv(self) -> CycElt:
        """Inverse via the extended Euclidean algorithm against Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero")
        # Track s with s*self = r (mod Phi_n).
        r0, r1 = [Fraction(c) for c in cyclotomic_poly(self.n)], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
        return CycElt(self.n, [c / r1[0] for c in s1])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element has surviving powers of zeta")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, CycElt):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{rat_str(c)}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CycElt({self.n}: {' + '.join(terms) or '0'})"

    def serialize(self) -> dict:
        return {"n": self.n, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def deserialize(cls, data: dict) -> CycElt:
        return cls(int(data["n"]), [rat(c) for c in data["coeffs"]])


def cyc_add(x: CycElt, y: CycElt) -> CycElt:
    return x + y


def cyc_mul(x: CycElt, y: CycElt) -> CycElt:
    return x * y


def cyc_inv(x: CycElt) -> CycElt:
    return x.inv()


def pi_valuation(x: CycElt, p: int, r: int) -> int:
    """Valuation of x at pi = 1 - zeta_{p^r}, normalized so that pi has valuation 1.

    Q_p(zeta_{p^r}) is totally ramified of degree phi(p^r) with residue degree 1,
    so the valuation equals nu_p of the field norm, here the resultant with Phi.
    """
    if x.n != p**r:
        raise ValueError(f"element modulus {x.n} is not {p}^{r}")
    if x.is_zero():
        raise ValueError("valuation of zero")
    den = 1
    for c in x.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    numerators = [int(c * den) for c in x.coeffs]
    norm = resultant(cyclotomic_poly(x.n), numerators)
    return nu_p(norm, p) - euler_phi(x.n) * nu_p(den, p)
