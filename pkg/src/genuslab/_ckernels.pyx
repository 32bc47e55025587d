# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the lattice sweep and integer Dirichlet convolution."""
import numpy as np
cimport numpy as cnp

from ._pykernels import x_range, y_bound

cnp.import_array()


def rep_counts(long long a, long long b, long long c, long long limit):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(limit + 1, dtype=np.int64)
    cdef long long[::1] cv = counts
    cdef long long y, x, lo, hi, v, ymax
    ymax = y_bound(a, b, c, limit)
    for y in range(-ymax, ymax + 1):
        lo, hi = x_range(a, b, c, y, limit)
        for x in range(lo, hi + 1):
            v = a * x * x + b * x * y + c * y * y
            cv[v] += 1
    cv[0] = 0
    return counts


def dconv_int64(const long long[::1] f, const long long[::1] g):
    cdef Py_ssize_t M = f.shape[0] - 1
    out = np.zeros(M + 1, dtype=np.int64)
    cdef long long[::1] ov = out
    cdef Py_ssize_t d, k, q
    cdef long long fd
    for d in range(1, M + 1):
        fd = f[d]
        if fd == 0:
            continue
        q = M // d
        for k in range(1, q + 1):
            ov[d * k] += fd * g[k]
    return out
