"""Pure-numpy kernels: truncated power-series arithmetic and the dual
Frenet integrator.

This module is the reference implementation; ruledkit._kernels is a
Cython mirror with identical semantics selected at import time by
ruledkit.kernels when available.

Series are 1-D float64 coefficient arrays c with f(h) = sum c[k] h^k,
truncated at len(c).  Binary kernels expect equal-length inputs.
"""

import numpy as np

BACKEND = "pure"


def series_mul(a, b):
    """Truncated Cauchy product of two coefficient arrays (same length)."""
    n = len(a)
    return np.convolve(a, b)[:n].copy()


def series_div(a, b):
    """Series quotient a/b; requires b[0] != 0."""
    n = len(a)
    c = np.empty(n)
    b0 = b[0]
    c[0] = a[0] / b0
    for k in range(1, n):
        acc = a[k]
        for j in range(1, k + 1):
            acc -= b[j] * c[k - j]
        c[k] = acc / b0
    return c


def series_sqrt(a):
    """Series square root; requires a[0] > 0."""
    n = len(a)
    r = np.empty(n)
    r0 = np.sqrt(a[0])
    r[0] = r0
    for k in range(1, n):
        acc = a[k]
        for j in range(1, k):
            acc -= r[j] * r[k - j]
        r[k] = acc / (2.0 * r0)
    return r


def dual_orthonormalize(y):
    """Dual Gram-Schmidt of a frame [v0 v1 n0 n1 t0 t1] (18 reals).

    Normalizes v, removes the dual projection of n onto v, renormalizes,
    and rebuilds t as the dual cross product, so the nine dual
    orthonormality relations hold to roundoff.  Returns a new array.
    """
    y = np.asarray(y, dtype=float).copy()
    v0, v1 = y[0:3], y[3:6]
    n0, n1 = y[6:9], y[9:12]

    nv = np.sqrt(v0 @ v0)
    v0 /= nv
    v1 = (v1 - (v0 @ v1) * v0) / nv

    c0 = n0 @ v0
    c1 = n0 @ v1 + n1 @ v0
    n0 = n0 - c0 * v0
    n1 = n1 - c0 * v1 - c1 * v0
    nn = np.sqrt(n0 @ n0)
    n0 /= nn
    n1 = (n1 - (n0 @ n1) * n0) / nn

    t0 = np.cross(v0, n0)
    t1 = np.cross(v0, n1) + np.cross(v1, n0)
    return np.concatenate([v0, v1, n0, n1, t0, t1])


def _rhs(row, y):
    """Right-hand side of the dual Frenet system in a general parameter.

    row = (kappa0, kappa1, tau0, tau1) at the evaluation point; kappa1,
    tau0, tau1 are the arc-length invariants and kappa0 is the director
    speed ds/du, so the whole field is scaled by kappa0.
    """
    k0, k1, t0p, t1p = row
    v0, v1 = y[0:3], y[3:6]
    n0, n1 = y[6:9], y[9:12]
    tt0, tt1 = y[12:15], y[15:18]
    dy = np.empty(18)
    dy[0:3] = k0 * n0
    dy[3:6] = k0 * (n1 + k1 * n0)
    dy[6:9] = k0 * (-v0 + t0p * tt0)
    dy[9:12] = k0 * (-v1 - k1 * v0 + t0p * tt1 + t1p * tt0)
    dy[12:15] = k0 * (-t0p * n0)
    dy[15:18] = k0 * (-t0p * n1 - t1p * n0)
    return dy


def frenet_rk4(invariants, y0, h, nsteps, renorm=True):
    """Classical RK4 on the 18-real dual Frenet frame system.

    invariants: (2*nsteps+1, 4) array of (kappa0, kappa1, tau0, tau1)
    sampled at s0 + i*h/2 (stage values at step ends and midpoints).
    Returns the (nsteps+1, 18) array of frames; each step ends with a
    dual Gram-Schmidt re-orthonormalization when renorm is set.
    """
    invariants = np.asarray(invariants, dtype=float)
    out = np.empty((nsteps + 1, 18))
    y = np.asarray(y0, dtype=float).copy()
    out[0] = y
    for i in range(nsteps):
        r0 = invariants[2 * i]
        rm = invariants[2 * i + 1]
        r1 = invariants[2 * i + 2]
        k1 = _rhs(r0, y)
        k2 = _rhs(rm, y + 0.5 * h * k1)
        k3 = _rhs(rm, y + 0.5 * h * k2)
        k4 = _rhs(r1, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if renorm:
            y = dual_orthonormalize(y)
        out[i + 1] = y
    return out
