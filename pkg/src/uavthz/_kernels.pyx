# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Signatures and arithmetic order mirror _kernels_py."""

import numpy as np
from libc.math cimport exp, sqrt, M_PI


def ar1_filter(double c, const double[::1] u):
    """y[0] = u[0]; y[k] = c * y[k-1] + u[k]."""
    cdef Py_ssize_t n = u.shape[0], k
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] y = out
    cdef double acc = 0.0
    with nogil:
        for k in range(n):
            acc = c * acc + u[k]
            y[k] = acc
    return out


def weibull_shape_sums(const double[::1] lny, double k):
    """Return (sum w, sum w*lny, sum w*lny**2) with w = exp(k*lny)."""
    cdef Py_ssize_t n = lny.shape[0], i
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, w, l
    with nogil:
        for i in range(n):
            l = lny[i]
            w = exp(k * l)
            s0 += w
            s1 += w * l
            s2 += w * l * l
    return s0, s1, s2


cdef double _i0e_scalar(double x) nogil:
    cdef double ax = x if x >= 0.0 else -x
    cdef double q, term, total, inv8x
    cdef int k
    if ax <= 25.0:
        q = 0.25 * ax * ax
        term = 1.0
        total = 1.0
        k = 1
        while k < 500:
            term = term * q / (<double>k * <double>k)
            total = total + term
            if term <= 1e-17 * total:
                break
            k += 1
        return total * exp(-ax)
    inv8x = 1.0 / (8.0 * ax)
    term = 1.0
    total = 1.0
    k = 1
    while k < 60:
        term = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) * inv8x / k
        total = total + term
        if term <= 1e-17 * total:
            break
        k += 1
    return total / sqrt(2.0 * M_PI * ax)


def bessel_i0e(const double[::1] x):
    """Exponentially scaled modified Bessel function of order zero."""
    cdef Py_ssize_t n = x.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] y = out
    with nogil:
        for i in range(n):
            y[i] = _i0e_scalar(x[i])
    return out
