# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled log-domain kernels.

Same contract as shiftorbits._core_py; see there for the semantics.  These
are the hot inner loops (weight evaluation over long index sweeps and the
log-sum-exp norm accumulator), written as straight C loops over int64/float64
buffers.
"""

from libc.math cimport M_PI, exp, log, sin, INFINITY

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double LN2 = log(2.0)
cdef double HALF_PI = 0.5 * M_PI


def krein_log_weights(ns, double log_base):
    cdef const cnp.int64_t[::1] v = np.ascontiguousarray(ns, dtype=np.int64)
    cdef Py_ssize_t i, n = v.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double a, m
    for i in range(n):
        a = <double> (v[i] if v[i] >= 0 else -v[i])
        m = <double> ((v[i] if v[i] >= 0 else -v[i]) + 1)
        out[i] = a * sin(HALF_PI * (log(m) / LN2)) * log_base
    return out_arr


def geometric_log_weights(ns, double log_rate):
    cdef const cnp.int64_t[::1] v = np.ascontiguousarray(ns, dtype=np.int64)
    cdef Py_ssize_t i, n = v.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(n):
        out[i] = -(<double> (v[i] if v[i] >= 0 else -v[i])) * log_rate
    return out_arr


def mixed_log_weights(ns):
    cdef const cnp.int64_t[::1] v = np.ascontiguousarray(ns, dtype=np.int64)
    cdef Py_ssize_t i, n = v.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    for i in range(n):
        if v[i] <= 0:
            out[i] = (<double> v[i]) * LN2
        else:
            out[i] = -log(<double> (v[i] + 1))
    return out_arr


def logsumexp(xs):
    cdef const double[::1] v = np.ascontiguousarray(xs, dtype=np.float64)
    cdef Py_ssize_t i, n = v.shape[0]
    if n == 0:
        return -INFINITY
    # descending order, then a single accumulation pass against the max
    order_arr = np.sort(np.asarray(xs, dtype=np.float64))[::-1].copy()
    cdef double[::1] order = order_arr
    cdef double m = order[0]
    if m == -INFINITY or m != m:
        return float(m)
    cdef double total = 0.0
    for i in range(n):
        total += exp(order[i] - m)
    return float(m + log(total))
