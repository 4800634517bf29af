# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Each function mirrors one in ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, fabs, sqrt

cnp.import_array()


def quat_matmul(const double[:, :, ::1] a, const double[:, :, ::1] b):
    cdef Py_ssize_t n = a.shape[0], l = a.shape[1], m = b.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double a0, a1, a2, a3, b0, b1, b2, b3
    if b.shape[0] != l or a.shape[2] != 4 or b.shape[2] != 4:
        raise ValueError("shape mismatch in quaternion matmul")
    out = np.zeros((n, m, 4), dtype=np.float64)
    cdef double[:, :, ::1] c = out
    for i in range(n):
        for k in range(l):
            a0 = a[i, k, 0]
            a1 = a[i, k, 1]
            a2 = a[i, k, 2]
            a3 = a[i, k, 3]
            if a0 == 0.0 and a1 == 0.0 and a2 == 0.0 and a3 == 0.0:
                continue
            for j in range(m):
                b0 = b[k, j, 0]
                b1 = b[k, j, 1]
                b2 = b[k, j, 2]
                b3 = b[k, j, 3]
                if b0 == 0.0 and b1 == 0.0 and b2 == 0.0 and b3 == 0.0:
                    continue
                c[i, j, 0] += a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
                c[i, j, 1] += a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
                c[i, j, 2] += a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
                c[i, j, 3] += a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
    return out


def bfs_distances(const unsigned char[:, ::1] pattern):
    cdef Py_ssize_t n = pattern.shape[0]
    cdef Py_ssize_t src, head, tail, u, v
    out = np.full((n, n), INFINITY, dtype=np.float64)
    cdef double[:, ::1] d = out
    cdef Py_ssize_t[::1] queue = np.empty(n, dtype=np.intp)
    for src in range(n):
        d[src, src] = 0.0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for v in range(n):
                if pattern[u, v] and d[src, v] == INFINITY:
                    d[src, v] = d[src, u] + 1.0
                    queue[tail] = v
                    tail += 1
    return out


cdef double SUPPORT_REL = 1e-9


def power_iteration(const double[:, ::1] B, double shift, double tol, int maxiter,
                    bint symmetric=False):
    """Power iteration on B + shift*I for nonnegative B.

    Returns (x, upper, iters, converged) where upper = max_i (Bx)_i / x_i is
    the Collatz-Wielandt upper estimate. Stops once it meets a lower
    estimate: min_i (Bx)_i / x_i over entries above SUPPORT_REL * max x, or
    for symmetric B the larger of that and the Rayleigh quotient. It also
    stops when the upper estimate has stayed within tol for n + 10 steps,
    longer than any plateau caused by the start vector.
    """
    cdef Py_ssize_t n = B.shape[0]
    cdef Py_ssize_t i, j
    cdef int it, stall = 0
    cdef double s, r, upper, lower, nrm, xmax, cut, xbx, xx, prev = -1.0
    x_arr = np.full(n, 1.0 / sqrt(<double>n), dtype=np.float64)
    y_arr = np.empty(n, dtype=np.float64)
    bx_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] y = y_arr
    cdef double[::1] bx = bx_arr
    upper = 0.0
    for it in range(1, maxiter + 1):
        xmax = 0.0
        for i in range(n):
            if x[i] > xmax:
                xmax = x[i]
        cut = SUPPORT_REL * xmax
        upper = 0.0
        lower = INFINITY
        nrm = 0.0
        xbx = 0.0
        xx = 0.0
        for i in range(n):
            s = 0.0
            for j in range(n):
                s += B[i, j] * x[j]
            bx[i] = s
            if x[i] > 0.0:
                r = s / x[i]
                if r > upper:
                    upper = r
                if x[i] > cut and r < lower:
                    lower = r
            xbx += x[i] * s
            xx += x[i] * x[i]
            y[i] = s + shift * x[i]
            nrm += y[i] * y[i]
        if symmetric and xbx / xx > lower:
            lower = xbx / xx
        if nrm == 0.0:
            return x_arr, 0.0, it, True
        if upper - lower <= tol * upper:
            return x_arr, upper, it, True
        if prev >= 0.0 and fabs(upper - prev) <= tol * upper:
            stall += 1
            if stall > n + 10:
                return x_arr, upper, it, True
        else:
            stall = 0
        prev = upper
        nrm = sqrt(nrm)
        for i in range(n):
            x[i] = y[i] / nrm
    return x_arr, upper, maxiter, False
