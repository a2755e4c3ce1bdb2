# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sparse convolution kernels for coefficients mod m (m < 2**31).

Both kernels take the sparse operand as parallel arrays ``idx`` (strictly
increasing exponents) and ``val`` (coefficients already reduced into
[0, m)).  Accumulators are plain int64; a full reduction is forced before
the running sum could overflow.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

cdef int64_t INT64_MAX = 9223372036854775807


cdef inline int64_t _safe_terms(int64_t m) noexcept:
    # number of products (each <= (m-1)^2) that fit on top of a reduced value
    cdef int64_t sq = (m - 1) * (m - 1)
    if sq == 0:
        return INT64_MAX
    return (INT64_MAX - (m - 1)) // sq


def mul_sparse_mod(const int64_t[::1] dense, const int64_t[::1] idx,
                   const int64_t[::1] val, Py_ssize_t order, int64_t m):
    """out[i] = sum_j val[j] * dense[i - idx[j]] mod m, for i <= order."""
    cdef cnp.ndarray[int64_t, ndim=1] out_arr = np.zeros(order + 1, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef Py_ssize_t nnz = idx.shape[0]
    cdef Py_ssize_t jj, i, j
    cdef int64_t v
    cdef int64_t limit = _safe_terms(m)
    cdef int64_t pending = 0

    for jj in range(nnz):
        j = idx[jj]
        if j > order:
            break
        v = val[jj]
        if v == 0:
            continue
        if pending == limit:
            for i in range(order + 1):
                out[i] %= m
            pending = 0
        for i in range(j, order + 1):
            out[i] += v * dense[i - j]
        pending += 1

    for i in range(order + 1):
        out[i] %= m
    return out_arr


def div_sparse_mod(const int64_t[::1] num, const int64_t[::1] idx,
                   const int64_t[::1] val, int64_t inv_a0, Py_ssize_t order, int64_t m):
    """Solve a * b = num mod m by forward substitution.

    ``idx``/``val`` hold the nonzero terms of ``a`` with positive exponent;
    ``inv_a0`` is the inverse of a's constant term mod m.
    """
    cdef Py_ssize_t nnz = idx.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] neg_arr = np.empty(nnz, dtype=np.int64)
    cdef int64_t[::1] neg = neg_arr
    cdef cnp.ndarray[int64_t, ndim=1] out_arr = np.zeros(order + 1, dtype=np.int64)
    cdef int64_t[::1] b = out_arr
    cdef Py_ssize_t n, jj, j
    cdef int64_t acc, pending
    cdef int64_t limit = _safe_terms(m)

    for jj in range(nnz):
        neg[jj] = (m - val[jj]) % m

    for n in range(order + 1):
        acc = num[n]
        pending = 0
        for jj in range(nnz):
            j = idx[jj]
            if j > n:
                break
            if pending == limit:
                acc %= m
                pending = 0
            acc += neg[jj] * b[n - j]
            pending += 1
        b[n] = ((acc % m) * inv_a0) % m
    return out_arr
