"""Pure-Python kernels: truncated product expansions and the Klein family search.

The compiled module _ckernels exposes the same functions with the same results.
"""
from __future__ import annotations

from itertools import combinations


def series_power_product(trunc: int, factors: list[tuple[int, int]]) -> list[int]:
    """Coefficients of prod (1 - q^e)^power up to q^(trunc-1), e >= 1."""
    c = [0] * trunc
    c[0] = 1
    for e, power in factors:
        if e < 1:
            raise ValueError("exponent must be positive")
        if e >= trunc or power == 0:
            continue
        if power > 0:
            for _ in range(power):
                for i in range(trunc - 1, e - 1, -1):
                    c[i] -= c[i - e]
        else:
            for _ in range(-power):
                for i in range(e, trunc):
                    c[i] += c[i - e]
    return c


def cyclotomic_series_product(n: int, trunc: int, factors: list[tuple[int, int, int]]) -> list[list[int]]:
    """prod (1 - x^shift Q^e)^power over Z[x]/(x^n - 1), truncated at Q^trunc.

    Returns trunc rows of n integer coefficients.
    """
    c = [[0] * n for _ in range(trunc)]
    c[0][0] = 1
    for e, shift, power in factors:
        if e < 1:
            raise ValueError("exponent must be positive")
        if e >= trunc or power == 0:
            continue
        shift %= n
        if power > 0:
            for _ in range(power):
                for i in range(trunc - 1, e - 1, -1):
                    src, dst = c[i - e], c[i]
                    for s in range(n):
                        dst[(s + shift) % n] -= src[s]
        else:
            for _ in range(-power):
                for i in range(e, trunc):
                    src, dst = c[i - e], c[i]
                    for s in range(n):
                        dst[(s + shift) % n] += src[s]
    return c


def search_weight_two(n: int, max_support: int, max_coeff: int, table: list[list[int]],
                      modulus: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All exponent families with sum of m equal to -2 that pass the quadratic
    congruence mod `modulus` and have table[c][t]-weighted sums >= 0 for every row c.
    """
    found = []
    choices = [m for m in range(-max_coeff, max_coeff + 1) if m]
    for size in range(1, max_support + 1):
        for support in combinations(range(1, n), size):
            sq = [t * t for t in support]
            cols = [[row[t] for t in support] for row in table]
            for head in _tuples(choices, size - 1):
                last = -2 - sum(head)
                if last == 0 or abs(last) > max_coeff:
                    continue
                coeffs = head + (last,)
                if sum(m * s for m, s in zip(coeffs, sq)) % modulus:
                    continue
                if all(sum(m * x for m, x in zip(coeffs, col)) >= 0 for col in cols):
                    found.append((support, coeffs))
    return found


def _tuples(choices, length):
    if length == 0:
        yield ()
        return
    for rest in _tuples(choices, length - 1):
        for m in choices:
            yield rest + (m,)
