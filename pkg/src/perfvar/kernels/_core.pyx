# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled residual-recursion kernel.

Semantics match perfvar.kernels._pycore.css_residuals exactly; the
recursion over the moving-average terms is the hot loop of model fitting
and cannot be vectorized.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def css_residuals(z, phi, theta, double intercept):
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef double[::1] phiv = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[::1] thetav = np.ascontiguousarray(theta, dtype=np.float64)
    cdef Py_ssize_t p = phiv.shape[0]
    cdef Py_ssize_t q = thetav.shape[0]
    cdef Py_ssize_t n = zv.shape[0]
    if n <= p:
        return np.empty(0, dtype=np.float64)

    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.zeros(n, dtype=np.float64)
    cdef double[::1] ev = e
    cdef Py_ssize_t t, i, j, k
    cdef double acc
    with nogil:
        for t in range(p, n):
            acc = zv[t] - intercept
            for i in range(p):
                acc -= phiv[i] * zv[t - 1 - i]
            for j in range(q):
                k = t - 1 - j
                if k >= p:
                    acc -= thetav[j] * ev[k]
            ev[t] = acc
    return e[p:].copy()
