# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair kernels. Mirrors ``_pykernels`` exactly."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _pair(double s, int t, double *k, double *dk) noexcept nogil:
    cdef double p0 = 1.0, p1 = s, dp0 = 0.0, dp1 = 1.0, p2, dp2
    cdef int l
    k[0] = 3.0 * s
    dk[0] = 3.0
    for l in range(1, t):
        p2 = ((2 * l + 1) * s * p1 - l * p0) / (l + 1)
        dp2 = dp0 + (2 * l + 1) * p1
        k[0] += (2 * l + 3) * p2
        dk[0] += (2 * l + 3) * dp2
        p0 = p1
        p1 = p2
        dp0 = dp1
        dp1 = dp2


def legendre_kernel(X, int t):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], i, j
    grad_arr = np.zeros((n, 3), dtype=np.float64)
    cdef double[:, ::1] g = grad_arr
    cdef double total = 0.0, s, k, dk
    if t < 1:
        return 0.0, grad_arr
    with nogil:
        for i in range(n):
            s = x[i, 0] * x[i, 0] + x[i, 1] * x[i, 1] + x[i, 2] * x[i, 2]
            _pair(s, t, &k, &dk)
            total += k
            g[i, 0] += dk * x[i, 0]
            g[i, 1] += dk * x[i, 1]
            g[i, 2] += dk * x[i, 2]
            for j in range(i + 1, n):
                s = x[i, 0] * x[j, 0] + x[i, 1] * x[j, 1] + x[i, 2] * x[j, 2]
                _pair(s, t, &k, &dk)
                total += 2.0 * k
                g[i, 0] += dk * x[j, 0]
                g[i, 1] += dk * x[j, 1]
                g[i, 2] += dk * x[j, 2]
                g[j, 0] += dk * x[i, 0]
                g[j, 1] += dk * x[i, 1]
                g[j, 2] += dk * x[i, 2]
    scale = 2.0 / (<double>n * n)
    grad_arr *= scale
    return total / (<double>n * n), grad_arr


def legendre_kernel_value(X, int t):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], i, j
    cdef double total = 0.0, s, k, dk
    if t < 1:
        return 0.0
    with nogil:
        for i in range(n):
            s = x[i, 0] * x[i, 0] + x[i, 1] * x[i, 1] + x[i, 2] * x[i, 2]
            _pair(s, t, &k, &dk)
            total += k
            for j in range(i + 1, n):
                s = x[i, 0] * x[j, 0] + x[i, 1] * x[j, 1] + x[i, 2] * x[j, 2]
                _pair(s, t, &k, &dk)
                total += 2.0 * k
    return total / (<double>n * n)
