"""Compiled inner loops.

Every routine here has a numpy twin in ``_pykernels`` with the same
signature.  The matrix product and Horner loops use the same operation
order in both; ``power_sums`` adds sequentially here while numpy sums
pairwise, so the two agree to rounding only.
"""
import numpy as np


def hankel_matvec(const double[::1] moments, const double[::1] a):
    """b[n] = sum_k moments[n + k] * a[k], accumulated in increasing k."""
    cdef Py_ssize_t dim = a.shape[0]
    cdef Py_ssize_t n, k
    cdef double ak
    out = np.zeros(dim, dtype=np.float64)
    cdef double[::1] b = out
    for k in range(dim):
        ak = a[k]
        if ak == 0.0:
            continue
        for n in range(dim):
            b[n] += moments[n + k] * ak
    return out


def power_sums(const double[::1] t, const double[::1] c, Py_ssize_t n_max):
    """out[n] = sum_i c[i] * t[i]**n for n = 0..n_max, powers by recurrence."""
    cdef Py_ssize_t m = t.shape[0]
    cdef Py_ssize_t n, i
    cdef double s
    pw_arr = np.array(c, dtype=np.float64, copy=True)
    cdef double[::1] pw = pw_arr
    out = np.empty(n_max + 1, dtype=np.float64)
    cdef double[::1] res = out
    for n in range(n_max + 1):
        s = 0.0
        for i in range(m):
            s += pw[i]
            pw[i] *= t[i]
        res[n] = s
    return out


def horner_real(const double[::1] coeffs, const double[::1] x):
    """Horner's rule at every point; the point loop is innermost so it vectorises."""
    cdef Py_ssize_t deg = coeffs.shape[0] - 1
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t j, k
    cdef double ck
    out = np.zeros(m, dtype=np.float64)
    cdef double[::1] acc = out
    for k in range(deg, -1, -1):
        ck = coeffs[k]
        for j in range(m):
            acc[j] = acc[j] * x[j] + ck
    return out


def horner_complex(const double[::1] coeffs, const double complex[::1] z):
    cdef Py_ssize_t deg = coeffs.shape[0] - 1
    cdef Py_ssize_t m = z.shape[0]
    cdef Py_ssize_t j, k
    cdef double ck
    out = np.zeros(m, dtype=np.complex128)
    cdef double complex[::1] acc = out
    for k in range(deg, -1, -1):
        ck = coeffs[k]
        for j in range(m):
            acc[j] = acc[j] * z[j] + ck
    return out
