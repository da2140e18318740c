"""Truncated Taylor series (jets) and jet-valued 3-vectors.

A Jet stores coefficients c with f(s0 + h) = sum c[k] h^k up to the
truncation order; arithmetic propagates derivatives exactly (Taylor-mode
forward differentiation).  Binary operations truncate to the shorter
operand, which is the honest order bookkeeping: a product only knows as
many coefficients as its least-resolved factor.

JetVec is the 3-vector counterpart used for curves; its rows are series.
"""

import math

import numpy as np

from . import kernels


def _coeffs(x, n):
    """Coefficient array of length n for a Jet, float, or int."""
    if isinstance(x, Jet):
        return x.c[:n]
    c = np.zeros(n)
    c[0] = float(x)
    return c


class Jet:
    """Truncated power series around a base point."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = np.asarray(c, dtype=float)

    @staticmethod
    def variable(x0, order):
        """The identity function s -> s expanded at x0."""
        c = np.zeros(order + 1)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return Jet(c)

    @staticmethod
    def constant(x0, order):
        c = np.zeros(order + 1)
        c[0] = float(x0)
        return Jet(c)

    @staticmethod
    def from_derivatives(derivs):
        """Build a jet from derivative values [f, f', f'', ...]."""
        d = np.asarray(derivs, dtype=float)
        fact = np.array([math.factorial(k) for k in range(len(d))], dtype=float)
        return Jet(d / fact)

    @property
    def order(self):
        return len(self.c) - 1

    @property
    def value(self):
        return float(self.c[0])

    def derivatives(self):
        """Derivative values [f, f', f'', ...] at the base point."""
        fact = np.array([math.factorial(k) for k in range(len(self.c))], dtype=float)
        return self.c * fact

    def truncate(self, order):
        if order >= self.order:
            return self
        return Jet(self.c[: order + 1].copy())

    def pad(self, order):
        """Extend with zero coefficients (exact only for polynomials)."""
        if order <= self.order:
            return self.truncate(order)
        c = np.zeros(order + 1)
        c[: len(self.c)] = self.c
        return Jet(c)

    def deriv(self):
        """Series of the derivative; truncation order drops by one."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, len(self.c))
        return Jet(self.c[1:] * k)

    def antideriv(self, value=0.0):
        """Series of the antiderivative with given base-point value."""
        c = np.empty(len(self.c) + 1)
        c[0] = value
        c[1:] = self.c / np.arange(1, len(self.c) + 1)
        return Jet(c)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        n = min(len(self.c), len(other.c)) if isinstance(other, Jet) else len(self.c)
        return Jet(self.c[:n] + _coeffs(other, n))

    __radd__ = __add__

    def __sub__(self, other):
        n = min(len(self.c), len(other.c)) if isinstance(other, Jet) else len(self.c)
        return Jet(self.c[:n] - _coeffs(other, n))

    def __rsub__(self, other):
        n = len(self.c)
        return Jet(_coeffs(other, n) - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = min(len(self.c), len(other.c))
            return Jet(kernels.series_mul(self.c[:n], other.c[:n]))
        return Jet(self.c * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            n = min(len(self.c), len(other.c))
            return Jet(kernels.series_div(self.c[:n], other.c[:n]))
        return Jet(self.c / float(other))

    def __rtruediv__(self, other):
        n = len(self.c)
        return Jet(kernels.series_div(_coeffs(other, n), self.c))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("jet powers must be non-negative integers")
        out = Jet.constant(1.0, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sqrt(self):
        return Jet(kernels.series_sqrt(self.c))

    def __repr__(self):
        return f"Jet({np.array2string(self.c, precision=6)})"


def sincos(f):
    """Sine and cosine of a jet via the standard ODE recurrence."""
    n = f.order
    s = np.zeros(n + 1)
    c = np.zeros(n + 1)
    s[0] = math.sin(f.c[0])
    c[0] = math.cos(f.c[0])
    for k in range(n):
        acc_s = 0.0
        acc_c = 0.0
        for j in range(k + 1):
            acc_s += (j + 1) * f.c[j + 1] * c[k - j]
            acc_c += (j + 1) * f.c[j + 1] * s[k - j]
        s[k + 1] = acc_s / (k + 1)
        c[k + 1] = -acc_c / (k + 1)
    return Jet(s), Jet(c)


def sin(x):
    return sincos(x)[0] if isinstance(x, Jet) else math.sin(x)


def cos(x):
    return sincos(x)[1] if isinstance(x, Jet) else math.cos(x)


def exp(x):
    if not isinstance(x, Jet):
        return math.exp(x)
    n = x.order
    e = np.zeros(n + 1)
    e[0] = math.exp(x.c[0])
    for k in range(n):
        acc = 0.0
        for j in range(k + 1):
            acc += (j + 1) * x.c[j + 1] * e[k - j]
        e[k + 1] = acc / (k + 1)
    return Jet(e)


def sqrt(x):
    return x.sqrt() if isinstance(x, Jet) else math.sqrt(x)


def polyval(coeffs, x):
    """Evaluate a polynomial sum coeffs[k] x^k on a float or a Jet."""
    if not isinstance(x, Jet):
        return float(np.polynomial.polynomial.polyval(x, np.asarray(coeffs, dtype=float)))
    out = Jet.constant(0.0, x.order)
    for ck in reversed(np.asarray(coeffs, dtype=float)):
        out = out * x + ck
    return out


def compose(f, g):
    """Series composition f(g(h)); requires g(0) = 0."""
    if abs(g.c[0]) > 1e-300:
        raise ValueError("compose requires the inner series to vanish at 0")
    n = min(f.order, g.order)
    gt = g.truncate(n)
    out = Jet.constant(f.c[n], n)
    for k in range(n - 1, -1, -1):
        out = out * gt + f.c[k]
    return out


def invert(g):
    """Compositional inverse of g with g(0) = 0, g'(0) != 0 (Newton)."""
    if abs(g.c[0]) > 1e-300:
        raise ValueError("invert requires g(0) = 0")
    if g.c[1] == 0.0:
        raise ValueError("invert requires g'(0) != 0")
    n = g.order
    ident = Jet.variable(0.0, n)
    gp = g.deriv().pad(n)
    w = Jet(ident.c / g.c[1])
    for _ in range(max(3, int(math.log2(n + 1)) + 2)):
        w = w - (compose(g, w) - ident) / compose(gp, w)
    return w


class JetVec:
    """A 3-vector of jets, stored as a (3, order+1) coefficient array."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = np.asarray(c, dtype=float)

    @staticmethod
    def from_jets(jx, jy, jz):
        n = min(jx.order, jy.order, jz.order) + 1
        return JetVec(np.vstack([jx.c[:n], jy.c[:n], jz.c[:n]]))

    @staticmethod
    def constant(v, order):
        c = np.zeros((3, order + 1))
        c[:, 0] = np.asarray(v, dtype=float)
        return JetVec(c)

    @property
    def order(self):
        return self.c.shape[1] - 1

    @property
    def value(self):
        return self.c[:, 0].copy()

    def component(self, i):
        return Jet(self.c[i].copy())

    def truncate(self, order):
        if order >= self.order:
            return self
        return JetVec(self.c[:, : order + 1].copy())

    def deriv(self):
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.c.shape[1])
        return JetVec(self.c[:, 1:] * k)

    def __add__(self, other):
        n = min(self.c.shape[1], other.c.shape[1])
        return JetVec(self.c[:, :n] + other.c[:, :n])

    def __sub__(self, other):
        n = min(self.c.shape[1], other.c.shape[1])
        return JetVec(self.c[:, :n] - other.c[:, :n])

    def __neg__(self):
        return JetVec(-self.c)

    def scale(self, a):
        """Multiply by a scalar jet or number."""
        if isinstance(a, Jet):
            n = min(self.c.shape[1], len(a.c))
            rows = [kernels.series_mul(self.c[i, :n], a.c[:n]) for i in range(3)]
            return JetVec(np.vstack(rows))
        return JetVec(self.c * float(a))

    def dot(self, other):
        n = min(self.c.shape[1], other.c.shape[1])
        acc = np.zeros(n)
        for i in range(3):
            acc += kernels.series_mul(self.c[i, :n], other.c[i, :n])
        return Jet(acc)

    def cross(self, other):
        n = min(self.c.shape[1], other.c.shape[1])
        a, b = self.c[:, :n], other.c[:, :n]
        m = kernels.series_mul
        return JetVec(
            np.vstack(
                [
                    m(a[1], b[2]) - m(a[2], b[1]),
                    m(a[2], b[0]) - m(a[0], b[2]),
                    m(a[0], b[1]) - m(a[1], b[0]),
                ]
            )
        )

    def norm(self):
        return self.dot(self).sqrt()

    def __repr__(self):
        return f"JetVec({np.array2string(self.c, precision=6)})"


def det3(a, b, c):
    """Determinant of three jet vectors (scalar triple product)."""
    return a.dot(b.cross(c))


# finite-difference jets ----------------------------------------------------

def fornberg_weights(m, points):
    """Finite-difference weights for the m-th derivative at 0 on the
    given stencil points (Fornberg's recursion)."""
    x = np.asarray(points, dtype=float)
    n = len(x)
    d = np.zeros((m + 1, n, n))
    d[0, 0, 0] = 1.0
    c1 = 1.0
    for i in range(1, n):
        c2 = 1.0
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            for k in range(min(i, m) + 1):
                d[k, i, j] = (x[i] * d[k, i - 1, j] - k * d[k - 1, i - 1, j]) / c3
        for k in range(min(i, m) + 1):
            d[k, i, i] = c1 / c2 * (k * d[k - 1, i - 1, i - 1] - x[i - 1] * d[k, i - 1, i - 1])
        c1 = c2
    return d[m, n - 1]


def fd_derivative(point_fn, s0, m, scale=1.0, accuracy=8):
    """m-th derivative of a scalar or vector function by central
    differences of the given accuracy, with one Richardson step.

    The step balances truncation (h^accuracy) against roundoff
    (eps/h^m): h = eps^(1/(m+accuracy)) * scale.  Richardson
    extrapolates from the pair (h, 2h), which removes the leading
    error term without amplifying roundoff.
    """
    if m == 0:
        return np.asarray(point_fn(s0), dtype=float)
    half = (m + accuracy - 1) // 2 + (1 if (m + accuracy - 1) % 2 else 0)
    offsets = np.arange(-half, half + 1, dtype=float)
    h = (np.finfo(float).eps) ** (1.0 / (m + accuracy)) * scale

    def estimate(step):
        w = fornberg_weights(m, offsets * step)
        vals = [np.asarray(point_fn(s0 + o * step), dtype=float) for o in offsets]
        return sum(wi * vi for wi, vi in zip(w, vals))

    d1 = estimate(2.0 * h)
    d2 = estimate(h)
    return (2.0**accuracy * d2 - d1) / (2.0**accuracy - 1.0)


def fd_jet(point_fn, s0, order, scale=1.0, accuracy=8):
    """Jet of a scalar function from point evaluations only."""
    derivs = [fd_derivative(point_fn, s0, m, scale, accuracy) for m in range(order + 1)]
    return Jet.from_derivatives(np.asarray(derivs, dtype=float))
