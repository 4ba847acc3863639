# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integrand kernels: per-point denominator sums for the scan and
cell estimators.  Mirrors gendiff._kernels_py."""

from libc.math cimport cos, sin

import numpy as np


cdef inline double _ipow(double base, int s) nogil:
    cdef double out = base
    cdef int p
    for p in range(1, s):
        out *= base
    return out


def lhs_den(double[:, ::1] x, double ca, double cb, int s):
    """sum_j ((cos(ca*x_j) - cos(cb*x_j))^2)^s per row."""
    cdef Py_ssize_t n = x.shape[0], m = x.shape[1], i, j
    cdef double t, acc
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(m):
                t = cos(ca * x[i, j]) - cos(cb * x[i, j])
                acc += _ipow(t * t, s)
            o[i] = acc
    return out


def rhs_den(double[:, ::1] x, double da, double db, int s):
    """sum_j ((sin(da*x_j) * sin(db*x_j))^2)^s per row."""
    cdef Py_ssize_t n = x.shape[0], m = x.shape[1], i, j
    cdef double t, acc
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(m):
                t = sin(da * x[i, j]) * sin(db * x[i, j])
                acc += _ipow(t * t, s)
            o[i] = acc
    return out


def jcell_den(double[:, ::1] x, a_in, b_in, int s):
    """sum_j (((x_j - a_j) * (x_j - b_j))^2)^s per row."""
    a_arr = np.ascontiguousarray(a_in, dtype=np.float64)
    b_arr = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef double[::1] a = a_arr
    cdef double[::1] b = b_arr
    cdef Py_ssize_t n = x.shape[0], m = x.shape[1], i, j
    cdef double t, acc
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(m):
                t = (x[i, j] - a[j]) * (x[i, j] - b[j])
                acc += _ipow(t * t, s)
            o[i] = acc
    return out
