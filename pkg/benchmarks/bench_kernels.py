"""Time the compiled kernels against the pure-Python ones on identical inputs.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from modexp import _pykernels
from modexp.klein import standard_family

try:
    from modexp import _ckernels
except ImportError:
    _ckernels = None


def _h_factors(n: int, a: int, trunc: int, power: int) -> list[tuple[int, int]]:
    out = []
    k = 1
    while n * k - a < trunc:
        out += [(n * k + a, power), (n * k - a, power), (n * k, -2 * power)]
        k += 1
    return [(e, pw) for e, pw in out if 0 < e < trunc]


def cases():
    # 500 terms is the largest round size whose coefficients fit in int64
    trunc = 500
    series = [(5, 2), (3, -2), (4, -2)] + _h_factors(7, 5, trunc, 2) + _h_factors(7, 3, trunc, -2) \
        + _h_factors(7, 4, trunc, -2)
    yield "series product, 500 terms", "series_power_product", (trunc, series)
    fam = standard_family(5, 2)
    cyc = [(e, t, m) for t, m in fam.m for e in range(1, 400, 25)]
    yield "cyclotomic product, n=25, 400 terms", "cyclotomic_series_product", (25, 400, cyc)


def bench(label, fn_name, args, repeat):
    py = getattr(_pykernels, fn_name)
    t_py = min(timeit.repeat(lambda: py(*args), number=1, repeat=repeat))
    row = f"{label:40} python {t_py * 1000:9.2f} ms"
    if _ckernels is not None:
        c = getattr(_ckernels, fn_name)
        assert c(*args) == py(*args), f"{fn_name}: backends disagree"
        t_c = min(timeit.repeat(lambda: c(*args), number=1, repeat=repeat))
        row += f"   cython {t_c * 1000:9.2f} ms   speedup {t_py / t_c:7.1f}x"
    else:
        row += "   cython  (extension not built)"
    print(row)


def bench_search(repeat):
    code = ("import time; from modexp.klein import search_families; t=time.perf_counter(); "
            "search_families(13, 3, 4); print(time.perf_counter()-t)")
    times = {}
    for backend, env in (("python", {"MODEXP_PURE_PYTHON": "1"}), ("cython", {})):
        runs = []
        for _ in range(repeat):
            out = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env},
                                 capture_output=True, text=True, check=True)
            runs.append(float(out.stdout))
        times[backend] = min(runs)
    row = f"{'Klein search, n=13, support 3, coeff 4':40} python {times['python'] * 1000:9.2f} ms"
    if _ckernels is not None:
        row += f"   cython {times['cython'] * 1000:9.2f} ms   speedup {times['python'] / times['cython']:7.1f}x"
    print(row)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    for label, fn_name, fn_args in cases():
        bench(label, fn_name, fn_args, args.repeat)
    bench_search(args.repeat)


if __name__ == "__main__":
    main()
