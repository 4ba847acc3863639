"""Pure-numpy fallback for the hot integrand kernels.

Same signatures as the compiled module gendiff._kernels; each function maps
an (N, m) sample block to the N per-point denominator sums.
"""

import numpy as np


def lhs_den(x, ca, cb, s):
    """sum_j ((cos(ca*x_j) - cos(cb*x_j))^2)^s per row."""
    t = np.cos(ca * x) - np.cos(cb * x)
    t *= t
    if s > 1:
        t **= s
    return t.sum(axis=1)


def rhs_den(x, da, db, s):
    """sum_j ((sin(da*x_j) * sin(db*x_j))^2)^s per row."""
    t = np.sin(da * x) * np.sin(db * x)
    t *= t
    if s > 1:
        t **= s
    return t.sum(axis=1)


def jcell_den(x, a, b, s):
    """sum_j (((x_j - a_j) * (x_j - b_j))^2)^s per row."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    t = (x - a) * (x - b)
    t *= t
    if s > 1:
        t **= s
    return t.sum(axis=1)
