# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Semantics mirror ``_pykernels`` operation for operation."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp2, fabs, log1p, INFINITY

cnp.import_array()

ctypedef cnp.int64_t i64

# identical to NPY_LOG2E, so results agree with numpy.logaddexp2
cdef double LOG2E = 1.442695040888963407359924681001892137


cdef inline double _log_add(double x, double y) noexcept nogil:
    cdef double d
    if x == y:
        return x + 1.0
    d = x - y
    if d > 0:
        # correction below 2**-63 cannot move |x| >= 1 by half an ulp
        if d > 64.0 and fabs(x) >= 1.0:
            return x
        return x + LOG2E * log1p(exp2(-d))
    if d < -64.0 and fabs(y) >= 1.0:
        return y
    return y + LOG2E * log1p(exp2(d))


def ims_weight_counts(const i64[::1] w, i64 c):
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] counts_arr = np.full(c + 1, -np.inf)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sub_arr = np.full(c + 1, -np.inf)
    cdef double[::1] counts = counts_arr
    cdef double[::1] sub = sub_arr
    cdef i64 suffix = 0, reach = 0, wp, lo, k
    cdef Py_ssize_t i
    for i in range(n):
        suffix += w[i]
    with nogil:
        for i in range(n):
            suffix -= w[i]
            if i == 0:
                sub[0] = 0.0
            else:
                wp = w[i - 1]
                reach = reach + wp
                if reach > c:
                    reach = c
                k = reach
                while k >= wp:
                    sub[k] = _log_add(sub[k - wp], sub[k])
                    k -= 1
            lo = c + 1 - w[i]
            if lo < suffix:
                lo = suffix
            if lo < 1:
                lo = 1
            k = lo
            while k <= c:
                counts[k] = _log_add(counts[k], sub[k - suffix])
                k += 1
    return counts_arr


def kmeans_step(const double[::1] prev, const i64[::1] w, Py_ssize_t g):
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cur_arr = np.full(n + 1, np.inf)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] arg_arr = np.full(n + 1, -1, dtype=np.int64)
    cdef double[::1] cur = cur_arr
    cdef i64[::1] arg = arg_arr
    cdef Py_ssize_t i, j, bj
    cdef double a1, a2, x, cost, cand, best
    cdef i64 last
    with nogil:
        for i in range(g, n + 1):
            last = w[i - 1]
            a1 = 0.0
            a2 = 0.0
            best = INFINITY
            bj = -1
            j = i - 1
            while j >= g - 1:
                x = <double>(w[j] - last)
                a1 = a1 + x
                a2 = a2 + x * x
                cost = a2 - a1 * a1 / <double>(i - j)
                if cost < 0:
                    cost = 0.0
                cand = prev[j] + cost
                if cand <= best:
                    best = cand
                    bj = j
                j -= 1
            cur[i] = best
            arg[i] = bj
    return cur_arr, arg_arr


def zero_one_max(const i64[::1] values, const i64[::1] weights, i64 c):
    cdef Py_ssize_t m = values.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] dp_arr = np.zeros(c + 1, dtype=np.int64)
    cdef i64[::1] dp = dp_arr
    cdef Py_ssize_t t
    cdef i64 k, wt, v, cand
    with nogil:
        for t in range(m):
            wt = weights[t]
            v = values[t]
            if wt > c:
                continue
            k = c
            while k >= wt:
                cand = dp[k - wt] + v
                if cand > dp[k]:
                    dp[k] = cand
                k -= 1
    return int(dp[c])
