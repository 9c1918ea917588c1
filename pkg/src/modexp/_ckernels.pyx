# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring _pykernels; int64 arithmetic with overflow checks."""

from libc.stdlib cimport malloc, calloc, free


cdef extern from *:
    """
    static int add_ovf(long long a, long long b, long long *out) {
        return __builtin_add_overflow(a, b, out);
    }
    static int sub_ovf(long long a, long long b, long long *out) {
        return __builtin_sub_overflow(a, b, out);
    }
    """
    int add_ovf(long long a, long long b, long long *out) nogil
    int sub_ovf(long long a, long long b, long long *out) nogil


def series_power_product(Py_ssize_t trunc, factors):
    cdef long long *c = <long long *> calloc(trunc, sizeof(long long))
    cdef Py_ssize_t i, e, rep, power
    cdef int bad = 0
    if c == NULL:
        raise MemoryError()
    try:
        c[0] = 1
        for fe, fp in factors:
            e = fe
            power = fp
            if e < 1:
                raise ValueError("exponent must be positive")
            if e >= trunc or power == 0:
                continue
            with nogil:
                if power > 0:
                    for rep in range(power):
                        i = trunc - 1
                        while i >= e:
                            bad |= sub_ovf(c[i], c[i - e], &c[i])
                            i -= 1
                else:
                    for rep in range(-power):
                        for i in range(e, trunc):
                            bad |= add_ovf(c[i], c[i - e], &c[i])
            if bad:
                raise OverflowError("int64 overflow in series product")
        return [c[i] for i in range(trunc)]
    finally:
        free(c)


def cyclotomic_series_product(Py_ssize_t n, Py_ssize_t trunc, factors):
    cdef long long *c = <long long *> calloc(n * trunc, sizeof(long long))
    cdef Py_ssize_t i, s, e, shift, rep, power, d
    cdef int bad = 0
    if c == NULL:
        raise MemoryError()
    try:
        c[0] = 1
        for fe, fs, fp in factors:
            e = fe
            shift = fs % n
            power = fp
            if e < 1:
                raise ValueError("exponent must be positive")
            if e >= trunc or power == 0:
                continue
            with nogil:
                if power > 0:
                    for rep in range(power):
                        i = trunc - 1
                        while i >= e:
                            for s in range(n):
                                d = (s + shift) % n
                                bad |= sub_ovf(c[i * n + d], c[(i - e) * n + s], &c[i * n + d])
                            i -= 1
                else:
                    for rep in range(-power):
                        for i in range(e, trunc):
                            for s in range(n):
                                d = (s + shift) % n
                                bad |= add_ovf(c[i * n + d], c[(i - e) * n + s], &c[i * n + d])
            if bad:
                raise OverflowError("int64 overflow in cyclotomic series product")
        return [[c[i * n + s] for s in range(n)] for i in range(trunc)]
    finally:
        free(c)


cdef int _passes(int size, long long *coeffs, int *support, long long *sq,
                 long long *table, int nrows, int n, long long modulus) nogil:
    cdef long long acc = 0
    cdef int k, row
    for k in range(size):
        acc += coeffs[k] * sq[support[k]]
    if acc % modulus != 0:
        return 0
    for row in range(nrows):
        acc = 0
        for k in range(size):
            acc += coeffs[k] * table[row * n + support[k]]
        if acc < 0:
            return 0
    return 1


def search_weight_two(int n, int max_support, int max_coeff, table, long long modulus):
    if max_support > 16:
        raise ValueError("support too large")
    cdef int nrows = len(table)
    cdef long long *tab = <long long *> malloc(max(1, nrows * n) * sizeof(long long))
    cdef long long *sq = <long long *> malloc(n * sizeof(long long))
    cdef int support[16]
    cdef long long coeffs[16]
    cdef long long head
    cdef int size, k, row, t, pos
    if tab == NULL or sq == NULL:
        free(tab)
        free(sq)
        raise MemoryError()
    found = []
    try:
        for row in range(nrows):
            for t in range(n):
                tab[row * n + t] = table[row][t]
        for t in range(n):
            sq[t] = <long long> t * t
        for size in range(1, max_support + 1):
            if size > n - 1:
                break
            for k in range(size):
                support[k] = k + 1
            while True:
                # odometer over the first size-1 coefficients in [-M, M] minus 0
                for k in range(size - 1):
                    coeffs[k] = -max_coeff
                while True:
                    head = 0
                    for k in range(size - 1):
                        head += coeffs[k]
                    coeffs[size - 1] = -2 - head
                    if coeffs[size - 1] != 0 and -max_coeff <= coeffs[size - 1] <= max_coeff:
                        if _passes(size, coeffs, support, sq, tab, nrows, n, modulus):
                            found.append((tuple([support[k] for k in range(size)]),
                                          tuple([coeffs[k] for k in range(size)])))
                    pos = size - 2
                    while pos >= 0:
                        coeffs[pos] += 1
                        if coeffs[pos] == 0:
                            coeffs[pos] = 1
                        if coeffs[pos] <= max_coeff:
                            break
                        coeffs[pos] = -max_coeff
                        pos -= 1
                    if pos < 0:
                        break
                # next combination of size elements from 1..n-1
                pos = size - 1
                while pos >= 0 and support[pos] == n - size + pos:
                    pos -= 1
                if pos < 0:
                    break
                support[pos] += 1
                for k in range(pos + 1, size):
                    support[k] = support[k - 1] + 1
        return found
    finally:
        free(tab)
        free(sq)
