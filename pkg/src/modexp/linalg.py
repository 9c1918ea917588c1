"""Exact structured linear algebra over Q and Q(zeta_n)."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import CycElt, rat, rat_str


@dataclass(frozen=True)
class Mat:
    """Dense exact matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        ents = tuple(rat(x) for x in self.entries)
        if len(ents) != self.rows * self.cols:
            raise ValueError(f"{len(ents)} entries for a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> Mat:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def ones(cls, rows: int, cols: int) -> Mat:
        return cls(rows, cols, (Fraction(1),) * (rows * cols))

    @classmethod
    def column(cls, values: Sequence) -> Mat:
        return cls(len(values), 1, tuple(values))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> Mat:
        return Mat(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: Mat) -> Mat:
        self._same_shape(other)
        return Mat(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        self._same_shape(other)
        return Mat(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> Mat:
        return Mat(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c) -> Mat:
        c = rat(c)
        return Mat(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __matmul__(self, other: Mat) -> Mat:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                out.append(sum((x * y for x, y in zip(r, c) if x and y), Fraction(0)))
        return Mat(self.rows, other.cols, tuple(out))

    def row_sums(self) -> list[Fraction]:
        return [sum(self.row(i), Fraction(0)) for i in range(self.rows)]

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def submatrix(self, keep_rows: Sequence[int], keep_cols: Sequence[int]) -> Mat:
        return Mat(len(keep_rows), len(keep_cols),
                   tuple(self[i, j] for i in keep_rows for j in keep_cols))

    def delete(self, row: int, col: int) -> Mat:
        """Drop one row and one column (0-based)."""
        return self.submatrix([i for i in range(self.rows) if i != row],
                              [j for j in range(self.cols) if j != col])

    def _same_shape(self, other: Mat) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [rat_str(x) for x in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> Mat:
        return cls(int(data["rows"]), int(data["cols"]), tuple(rat(x) for x in data["entries"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for i in range(self.rows):
            writer.writerow([rat_str(x) for x in self.row(i)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> Mat:
        rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
        return cls.from_rows([[rat(x) for x in r] for r in rows])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass(frozen=True)
class Circulant:
    """n x n circulant given by its first column: entry(i, j) = c[(i - j) mod n]."""

    first_column: tuple

    def __post_init__(self):
        col = tuple(rat(x) for x in self.first_column)
        if not col:
            raise ValueError("empty circulant")
        object.__setattr__(self, "first_column", col)

    @property
    def n(self) -> int:
        return len(self.first_column)

    def entry(self, i: int, j: int) -> Fraction:
        return self.first_column[(i - j) % self.n]

    def materialize(self) -> Mat:
        n = self.n
        return Mat(n, n, tuple(self.entry(i, j) for i in range(n) for j in range(n)))


def circ_eigen(c: Circulant, j: int) -> tuple[CycElt, list[CycElt]]:
    """Eigenpair j (1-based) of a circulant, eigenvector (1, z^(j-1), ..., z^((n-1)(j-1)))."""
    n = c.n
    if not 1 <= j <= n:
        raise ValueError(f"eigen index {j} outside 1..{n}")
    s = j - 1
    lam = CycElt.zero(n)
    for k, ck in enumerate(c.first_column):
        if ck:
            lam = lam + CycElt.zeta(n, s * (n - k)) * ck
    vec = [CycElt.zeta(n, s * m) for m in range(n)]
    return lam, vec


def _eigen_inverses(c: Circulant) -> list[CycElt]:
    out = []
    for j in range(1, c.n + 1):
        lam, _ = circ_eigen(c, j)
        if lam.is_zero():
            raise ZeroDivisionError("non-invertible circulant")
        out.append(lam.inv())
    return out


def _spectral_entry(inverses: list[CycElt], n: int, diff: int) -> Fraction:
    total = CycElt.zero(n)
    for k, lam_inv in enumerate(inverses):
        total = total + lam_inv * CycElt.zeta(n, k * diff)
    total = total * Fraction(1, n)
    if not total.is_rational():
        raise ArithmeticError("circulant inverse entry is not rational")
    return total.to_rational()


def circ_inverse_entry(c: Circulant, i: int, j: int) -> Fraction:
    """Entry (i, j), 1-based, of the inverse of c, computed spectrally."""
    if not (1 <= i <= c.n and 1 <= j <= c.n):
        raise ValueError("index out of range")
    return _spectral_entry(_eigen_inverses(c), c.n, i - j)


def circ_inverse(c: Circulant) -> Circulant:
    inverses = _eigen_inverses(c)
    return Circulant(tuple(_spectral_entry(inverses, c.n, d) for d in range(c.n)))


def gauss_inverse(m: Mat) -> Mat:
    """Gauss-Jordan inverse; pivot is the first nonzero entry in the column."""
    if not m.is_square:
        raise ValueError("matrix is not square")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / prow[col]
        prow[:] = [x * inv for x in prow]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                row = aug[i]
                row[:] = [x - f * y for x, y in zip(row, prow)]
    return Mat(n, n, tuple(x for r in aug for x in r[n:]))


def minor_removed_inverse(a_inv: Mat, s: int, t: int) -> Mat:
    """Inverse of A with row s and column t deleted (1-based), from the entries of A^-1.

    Rows of the result follow the columns of A other than t, columns follow the
    rows of A other than s.
    """
    n = a_inv.rows
    if not (1 <= s <= n and 1 <= t <= n):
        raise ValueError("index out of range")
    pivot = a_inv[t - 1, s - 1]
    if pivot == 0:
        raise ZeroDivisionError("pivot vanishes")
    rows = [i for i in range(n) if i != t - 1]
    cols = [j for j in range(n) if j != s - 1]
    return Mat(n - 1, n - 1, tuple(
        a_inv[i, j] - a_inv[i, s - 1] * a_inv[t - 1, j] / pivot for i in rows for j in cols))


def woodbury(a_inv: Mat, u: Mat, c_inv: Mat, v: Mat) -> Mat:
    """(A + U C V)^-1 from A^-1 and C^-1."""
    if not (a_inv.is_square and c_inv.is_square):
        raise ValueError("A^-1 and C^-1 must be square")
    if u.rows != a_inv.rows or v.cols != a_inv.cols or u.cols != c_inv.rows or v.rows != c_inv.cols:
        raise ValueError("dimensions are not conformable")
    a_inv_u = a_inv @ u
    v_a_inv = v @ a_inv
    inner = gauss_inverse(c_inv + v @ a_inv_u)
    return a_inv - a_inv_u @ inner @ v_a_inv


def block_ones_inverse(a_inv: Mat, b_inv: Mat) -> Mat:
    """Inverse of [[A, 1], [1, B]] (all-ones off-diagonal blocks) from A^-1 and B^-1."""
    if not (a_inv.is_square and b_inv.is_square):
        raise ValueError("blocks must be square")
    if b_inv.rows == 0:
        return a_inv
    if a_inv.rows == 0:
        return b_inv
    n, m = a_inv.rows, b_inv.rows
    alpha, beta = a_inv.total(), b_inv.total()
    det = 1 - alpha * beta
    if det == 0:
        raise ZeroDivisionError("rank-2 update singular")
    ra, ca = a_inv.row_sums(), a_inv.transpose().row_sums()
    rb, cb = b_inv.row_sums(), b_inv.transpose().row_sums()
    out = []
    for i in range(n + m):
        for j in range(n + m):
            if i < n and j < n:
                out.append(a_inv[i, j] + beta / det * ra[i] * ca[j])
            elif i < n:
                out.append(-ra[i] * cb[j - n] / det)
            elif j < n:
                out.append(-rb[i - n] * ca[j] / det)
            else:
                out.append(b_inv[i - n, j - n] + alpha / det * rb[i - n] * cb[j - n])
    return Mat(n + m, n + m, tuple(out))


def block(rows: Iterable[Iterable[Mat]]) -> Mat:
    """Assemble a matrix from a grid of blocks."""
    grid = [list(r) for r in rows]
    out_rows: list[list[Fraction]] = []
    for brow in grid:
        height = brow[0].rows
        for i in range(height):
            line: list[Fraction] = []
            for b in brow:
                line.extend(b.row(i))
            out_rows.append(line)
    return Mat.from_rows(out_rows)
