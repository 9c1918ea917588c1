"""Intersection matrix of the special fiber of X(N p^r) and its truncated inverse.

All matrices here are divided by deg S(N), the degree of the supersingular
locus; CurveData carries that factor for reporting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .arith import nu_p, nu_p_residue, rat, require_prime
from .linalg import Circulant, Mat, block, gauss_inverse


@dataclass(frozen=True, order=True)
class ComponentLabel:
    """Component of the special fiber: A(a) for (1,-a), B(b) for (-pb,1)."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("A", "B"):
            raise ValueError(f"unknown component kind {self.kind!r}")
        if self.index < 0:
            raise ValueError("negative component index")

    def __str__(self) -> str:
        return f"{self.kind}({self.index})"

    @classmethod
    def parse(cls, text: str) -> ComponentLabel:
        text = text.strip()
        if len(text) < 4 or text[1] != "(" or text[-1] != ")":
            raise ValueError(f"bad component label {text!r}")
        return cls(text[0], int(text[2:-1]))

    def validate(self, p: int, r: int) -> None:
        bound = p**r if self.kind == "A" else p ** (r - 1)
        if self.index >= bound:
            raise ValueError(f"{self} out of range for p={p}, r={r}")

    def surjection(self, p: int) -> tuple[int, int]:
        """Coefficients (x, y) of the surjection (u, v) -> x u + y v."""
        if self.kind == "A":
            return (1, -self.index)
        return (-p * self.index, 1)


def A(a: int) -> ComponentLabel:
    return ComponentLabel("A", a)


def B(b: int) -> ComponentLabel:
    return ComponentLabel("B", b)


def labels(p: int, r: int) -> list[ComponentLabel]:
    """All components in matrix order: A(0..p^r-1), then B(0..p^(r-1)-1)."""
    return [A(a) for a in range(p**r)] + [B(b) for b in range(p ** (r - 1))]


def t_labels(p: int, r: int) -> list[ComponentLabel]:
    """Components indexing the rows of T (everything except A(0))."""
    return labels(p, r)[1:]


@dataclass(frozen=True)
class CurveData:
    p: int
    r: int
    N: int
    degS: Fraction

    @classmethod
    def make(cls, p: int, r: int, N: int) -> CurveData:
        from .invariants import deg_ss

        validate_pr(p, r)
        return cls(p, r, N, deg_ss(N, p))


def validate_pr(p: int, r: int) -> None:
    require_prime(p)
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r!r}")


def local_intersection(l1: ComponentLabel, l2: ComponentLabel, p: int, r: int) -> Fraction:
    """Intersection number of two components at one supersingular point, over deg S."""
    validate_pr(p, r)
    l1.validate(p, r)
    l2.validate(p, r)
    if l1 == l2:
        return Fraction(-(p ** (2 * r - 1)))
    if l1.kind != l2.kind:
        return Fraction(1)
    if l1.kind == "A":
        return Fraction(p ** (2 * nu_p_residue(l1.index - l2.index, p, r)))
    return Fraction(p ** (2 * nu_p_residue(l1.index - l2.index, p, r - 1) + 2))


def _kernel(label: ComponentLabel, p: int, r: int) -> set[tuple[int, int]]:
    q = p**r
    x, y = label.surjection(p)
    return {(u, v) for u, v in product(range(q), repeat=2) if (x * u + y * v) % q == 0}


def local_intersection_bruteforce(l1: ComponentLabel, l2: ComponentLabel, p: int, r: int) -> Fraction:
    """Same quantity by enumerating kernels in (Z/p^r)^2.

    Distinct components meet with multiplicity #((Z/p^r)^2 / (K1 + K2))^2; the
    self-intersection is minus the sum of intersections with all the others,
    since the whole fiber has zero intersection with each component.
    """
    q = p**r
    if l1 != l2:
        k1, k2 = _kernel(l1, p, r), _kernel(l2, p, r)
        span = {((a + c) % q, (b + d) % q) for a, b in k1 for c, d in k2}
        index = q * q // len(span)
        return Fraction(index * index)
    return -sum((local_intersection_bruteforce(l1, other, p, r)
                 for other in labels(p, r) if other != l1), Fraction(0))


def circulant_M(p: int, r: int) -> Circulant:
    """The circulant block M(p^r); M(p^0) is the 1x1 matrix (-1/p)."""
    if r == 0:
        return Circulant((Fraction(-1, p),))
    q = p**r
    col = [Fraction(-(p ** (2 * r - 1)))]
    col += [Fraction(p ** (2 * nu_p(k, p))) for k in range(1, q)]
    return Circulant(tuple(col))


def build_M(p: int, r: int) -> Mat:
    validate_pr(p, r)
    top = circulant_M(p, r).materialize()
    bottom = circulant_M(p, r - 1).materialize().scale(p * p)
    return block([[top, Mat.ones(top.rows, bottom.cols)],
                  [Mat.ones(bottom.rows, top.cols), bottom]])


def build_M_from_labels(p: int, r: int) -> Mat:
    """Intersection matrix assembled entry by entry from local_intersection."""
    ls = labels(p, r)
    return Mat.from_rows([[local_intersection(x, y, p, r) for y in ls] for x in ls])


def build_T(p: int, r: int) -> Mat:
    return build_M(p, r).delete(0, 0)


def _check_index(i: int, size: int) -> None:
    if not 1 <= i <= size:
        raise ValueError(f"index {i} outside 1..{size}")


def m_inverse_closed(p: int, r: int, i: int, j: int) -> Fraction:
    """Entry (i, j) of M(p^r)^-1, indices 1..p^r (r = 0 gives the 1x1 case)."""
    validate_pr(p, max(r, 1))
    q = p**r
    _check_index(i, q)
    _check_index(j, q)
    base = -Fraction(p) ** (1 - 2 * r)
    if i == j:
        return base - Fraction(p - 1, p + 1) * r * Fraction(p) ** (1 - 2 * r)
    v = nu_p_residue(i - j, p, r)
    return base - Fraction(p) ** (2 - 3 * r) / (p + 1) * (-(p ** (r - 1)) + v * p ** (r - 1) * (p - 1))


def m11_inverse_closed(p: int, r: int, i: int, j: int) -> Fraction:
    """Entry (i, j) of the inverse of M(p^r) without its first row and column.

    Index i stands for A(i), 1 <= i <= p^r - 1.
    """
    validate_pr(p, r)
    q = p**r
    _check_index(i, q - 1)
    _check_index(j, q - 1)
    scale = Fraction(p) ** (1 - 2 * r)
    denom = (p + 1) * (p * r + p - r + 1)
    li, lj = nu_p(i, p), nu_p(j, p)
    corr = scale * (li * p - li + p) * (lj * p - lj + p) / denom
    if i == j:
        return -scale - Fraction(p - 1, p + 1) * r * scale + corr
    lij = nu_p_residue(i - j, p, r)
    return -scale * (lij * p + p - lij) / (p + 1) + corr


def tinv_closed(p: int, r: int, i: int, j: int) -> Fraction:
    """Entry (i, j) of deg S * T^-1.

    Indices 1..p^r-1 are A(1)..A(p^r-1); p^r..p^r+p^(r-1)-1 are B(0)..B(p^(r-1)-1).
    """
    validate_pr(p, r)
    q = p**r
    size = q + p ** (r - 1) - 1
    _check_index(i, size)
    _check_index(j, size)
    scale = Fraction(p) ** (1 - 2 * r) / (p + 1)
    h = p * r - r + 1
    in_a_i, in_a_j = i < q, j < q
    if in_a_i and in_a_j:
        if i == j:
            return -2 * scale * h + 2 * scale * (p - 1) * nu_p(i, p)
        v = nu_p_residue(i - j, p, r) - nu_p(i, p) - nu_p(j, p)
        return -scale * h - scale * (p - 1) * v
    if in_a_i:
        return -scale * h + scale * (p - 1) * nu_p(i, p)
    if in_a_j:
        return -scale * h + scale * (p - 1) * nu_p(j, p)
    if i == j:
        return -2 * scale * h
    return -scale * (p * r + p - r) - scale * (p - 1) * nu_p_residue(i - j, p, r - 1)


def tinv_closed_matrix(p: int, r: int) -> Mat:
    size = p**r + p ** (r - 1) - 1
    return Mat(size, size, tuple(tinv_closed(p, r, i, j)
                                 for i in range(1, size + 1) for j in range(1, size + 1)))


def tinv_oracle(p: int, r: int) -> Mat:
    return gauss_inverse(build_T(p, r))


def label_position(label: ComponentLabel, p: int, r: int) -> int:
    """1-based row of a label in T."""
    label.validate(p, r)
    if label == A(0):
        raise ValueError("A(0) is not a row of T")
    return label.index if label.kind == "A" else p**r + label.index


def tinv_rowsum(p: int, r: int, label: ComponentLabel) -> Fraction:
    """Row sum of deg S * T^-1 at the given component."""
    validate_pr(p, r)
    label.validate(p, r)
    if label == A(0):
        raise ValueError("A(0) is not a row of T")
    base = -Fraction(p * r - r + 1, p**r)
    if label.kind == "B":
        return base
    return base + Fraction((p - 1) * nu_p(label.index, p), p**r)


def valuation_differences(p: int, r: int, a: Sequence) -> list[Fraction]:
    """Solve T x = a with the closed-form inverse.

    Both T and a are taken divided by deg S, so the inputs are
    (deg(omega|component) - correction) / deg S in the order of t_labels.
    """
    size = p**r + p ** (r - 1) - 1
    if len(a) != size:
        raise ValueError(f"expected {size} values, got {len(a)}")
    vec = Mat.column([rat(x) for x in a])
    return list((tinv_closed_matrix(p, r) @ vec).entries)


def eigenvalue_closed(p: int, r: int, j: int) -> int:
    """Eigenvalue j (1-based) of M(p^r)."""
    _check_index(j, p**r)
    if j == 1:
        return -(p ** (r - 1))
    return -(p ** (2 * r - 2 - nu_p_residue(j - 1, p, r))) * (p + 1)
