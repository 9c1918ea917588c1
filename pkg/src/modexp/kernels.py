"""Backend selection for the hot loops.

The compiled extension is used when it imports; setting MODEXP_PURE_PYTHON=1
forces the pure-Python implementation. Integer overflow in the compiled
series kernels falls back to Python's unbounded integers.
"""
from __future__ import annotations

import os

from . import _pykernels

_compiled = None
if os.environ.get("MODEXP_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def series_power_product(trunc: int, factors: list[tuple[int, int]]) -> list[int]:
    if _compiled is not None:
        try:
            return _compiled.series_power_product(trunc, factors)
        except OverflowError:
            pass
    return _pykernels.series_power_product(trunc, factors)


def cyclotomic_series_product(n: int, trunc: int, factors: list[tuple[int, int, int]]) -> list[list[int]]:
    if _compiled is not None:
        try:
            return _compiled.cyclotomic_series_product(n, trunc, factors)
        except OverflowError:
            pass
    return _pykernels.cyclotomic_series_product(n, trunc, factors)


def search_weight_two(n: int, max_support: int, max_coeff: int, table: list[list[int]], modulus: int):
    if _compiled is not None:
        return _compiled.search_weight_two(n, max_support, max_coeff, table, modulus)
    return _pykernels.search_weight_two(n, max_support, max_coeff, table, modulus)
