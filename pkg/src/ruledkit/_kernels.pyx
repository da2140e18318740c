# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython kernels: truncated power-series arithmetic and the dual Frenet
integrator.  Semantics mirror ruledkit._kernels_py exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

BACKEND = "compiled"


def series_mul(a, b):
    """Truncated Cauchy product of two coefficient arrays (same length)."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    out = np.zeros(n)
    cdef double[::1] cv = out
    cdef Py_ssize_t k, j
    cdef double acc
    for k in range(n):
        acc = 0.0
        for j in range(k + 1):
            acc += av[j] * bv[k - j]
        cv[k] = acc
    return out


def series_div(a, b):
    """Series quotient a/b; requires b[0] != 0."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    out = np.empty(n)
    cdef double[::1] cv = out
    cdef double b0 = bv[0]
    cdef Py_ssize_t k, j
    cdef double acc
    cv[0] = av[0] / b0
    for k in range(1, n):
        acc = av[k]
        for j in range(1, k + 1):
            acc -= bv[j] * cv[k - j]
        cv[k] = acc / b0
    return out


def series_sqrt(a):
    """Series square root; requires a[0] > 0."""
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    out = np.empty(n)
    cdef double[::1] rv = out
    cdef double r0 = sqrt(av[0])
    cdef Py_ssize_t k, j
    cdef double acc
    rv[0] = r0
    for k in range(1, n):
        acc = av[k]
        for j in range(1, k):
            acc -= rv[j] * rv[k - j]
        rv[k] = acc / (2.0 * r0)
    return out


cdef void _cross(double* a, double* b, double* out) noexcept nogil:
    out[0] = a[1] * b[2] - a[2] * b[1]
    out[1] = a[2] * b[0] - a[0] * b[2]
    out[2] = a[0] * b[1] - a[1] * b[0]


cdef double _dot(double* a, double* b) noexcept nogil:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef void _dgs(double* y) noexcept nogil:
    """Dual Gram-Schmidt of a frame [v0 v1 n0 n1 t0 t1], in place."""
    cdef double* v0 = y
    cdef double* v1 = y + 3
    cdef double* n0 = y + 6
    cdef double* n1 = y + 9
    cdef double nv, nn, c0, c1, p
    cdef int i
    cdef double t0[3]
    cdef double t1a[3]
    cdef double t1b[3]

    nv = sqrt(_dot(v0, v0))
    for i in range(3):
        v0[i] /= nv
    p = _dot(v0, v1)
    for i in range(3):
        v1[i] = (v1[i] - p * v0[i]) / nv

    c0 = _dot(n0, v0)
    c1 = _dot(n0, v1) + _dot(n1, v0)
    for i in range(3):
        n1[i] = n1[i] - c0 * v1[i] - c1 * v0[i]
        n0[i] = n0[i] - c0 * v0[i]
    nn = sqrt(_dot(n0, n0))
    for i in range(3):
        n0[i] /= nn
    p = _dot(n0, n1)
    for i in range(3):
        n1[i] = (n1[i] - p * n0[i]) / nn

    _cross(v0, n0, t0)
    _cross(v0, n1, t1a)
    _cross(v1, n0, t1b)
    for i in range(3):
        y[12 + i] = t0[i]
        y[15 + i] = t1a[i] + t1b[i]


def dual_orthonormalize(y):
    """Dual Gram-Schmidt of a frame (18 reals); returns a new array."""
    out = np.array(y, dtype=np.float64, copy=True)
    cdef double[::1] yv = out
    _dgs(&yv[0])
    return out


cdef void _rhs(double k0, double k1, double t0p, double t1p,
               double* y, double* dy) noexcept nogil:
    cdef double* v0 = y
    cdef double* v1 = y + 3
    cdef double* n0 = y + 6
    cdef double* n1 = y + 9
    cdef double* tt0 = y + 12
    cdef double* tt1 = y + 15
    cdef int i
    for i in range(3):
        dy[i] = k0 * n0[i]
        dy[3 + i] = k0 * (n1[i] + k1 * n0[i])
        dy[6 + i] = k0 * (-v0[i] + t0p * tt0[i])
        dy[9 + i] = k0 * (-v1[i] - k1 * v0[i] + t0p * tt1[i] + t1p * tt0[i])
        dy[12 + i] = k0 * (-t0p * n0[i])
        dy[15 + i] = k0 * (-t0p * n1[i] - t1p * n0[i])


def frenet_rk4(invariants, y0, double h, Py_ssize_t nsteps, bint renorm=True):
    """Classical RK4 on the 18-real dual Frenet frame system.

    invariants: (2*nsteps+1, 4) rows (kappa0, kappa1, tau0, tau1) at
    s0 + i*h/2.  Returns frames of shape (nsteps+1, 18); each step ends
    with dual Gram-Schmidt re-orthonormalization when renorm is set.
    """
    cdef double[:, ::1] inv = np.ascontiguousarray(invariants, dtype=np.float64)
    out = np.empty((nsteps + 1, 18))
    cdef double[:, ::1] ov = out
    cdef double y[18]
    cdef double yt[18]
    cdef double k1[18]
    cdef double k2[18]
    cdef double k3[18]
    cdef double k4[18]
    cdef double[::1] y0v = np.ascontiguousarray(y0, dtype=np.float64)
    cdef Py_ssize_t i, j
    for j in range(18):
        y[j] = y0v[j]
        ov[0, j] = y[j]
    for i in range(nsteps):
        _rhs(inv[2 * i, 0], inv[2 * i, 1], inv[2 * i, 2], inv[2 * i, 3], y, k1)
        for j in range(18):
            yt[j] = y[j] + 0.5 * h * k1[j]
        _rhs(inv[2 * i + 1, 0], inv[2 * i + 1, 1], inv[2 * i + 1, 2], inv[2 * i + 1, 3], yt, k2)
        for j in range(18):
            yt[j] = y[j] + 0.5 * h * k2[j]
        _rhs(inv[2 * i + 1, 0], inv[2 * i + 1, 1], inv[2 * i + 1, 2], inv[2 * i + 1, 3], yt, k3)
        for j in range(18):
            yt[j] = y[j] + h * k3[j]
        _rhs(inv[2 * i + 2, 0], inv[2 * i + 2, 1], inv[2 * i + 2, 2], inv[2 * i + 2, 3], yt, k4)
        for j in range(18):
            y[j] = y[j] + (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
        if renorm:
            _dgs(y)
        for j in range(18):
            ov[i + 1, j] = y[j]
    return out
