"""Curves of unit dual vectors: the source of truth for a ruled surface.

A RuledCurveJet exposes Taylor jets of v(s) = v0(s) + eps*v1(s) at any
parameter value up to a declared order k_max.  Concrete curves are
analytic generators (closed-form jets), exact polynomial data, rigidly
transformed or arc-length reparameterized views, and finite-difference
sampled data.  Evaluation is pure in s, so curves are safe to query
from parallel grid loops.
"""

import math

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import PchipInterpolator

from . import jets
from .dual import DualQuaternion, DualVector, UnitDualVector
from .errors import CylindricalPoint, NotUnit, OrderUnavailable
from .jets import Jet, JetVec
from .tolerances import CYL_FLOOR, TOL_UNIT


class RuledCurveJet:
    """Evaluation contract s -> (v(s), v'(s), ..., v^(k)(s)).

    Subclasses implement dual_jets.  The curve must be unit
    (v.v = 1 in the dual sense) and non-cylindrical (|v0'| bounded away
    from zero) on its interval; both are spot-checked at construction.
    """

    def __init__(self, interval, k_max=12, analytic=True):
        a, b = float(interval[0]), float(interval[1])
        if not a < b:
            raise ValueError(f"empty interval {interval}")
        self.interval = (a, b)
        self.k_max = int(k_max)
        self.analytic = bool(analytic)

    def dual_jets(self, s, order):
        """Taylor jets (JetVec v0, JetVec v1) at s, to the given order."""
        raise NotImplementedError

    def _require_order(self, order):
        if order > self.k_max:
            raise OrderUnavailable(f"order {order} exceeds k_max={self.k_max}")

    # point evaluation helpers ----------------------------------------------

    def dual_vector(self, s) -> DualVector:
        v0, v1 = self.dual_jets(s, 0)
        return DualVector(v0.value, v1.value)

    def line_at(self, s) -> UnitDualVector:
        return UnitDualVector(self.dual_vector(s))

    def director(self, s):
        """e(s) = v0(s)."""
        return self.dual_jets(s, 0)[0].value

    def base_point(self, s):
        """r(s) = v0 x v1, the foot of the ruling closest to the origin."""
        v0, v1 = self.dual_jets(s, 0)
        return np.cross(v0.value, v1.value)

    def speed(self, s):
        """|v0'(s)| in the curve's own parameter."""
        v0, _ = self.dual_jets(s, 1)
        return float(np.linalg.norm(v0.deriv().value))

    def grid(self, n):
        return np.linspace(self.interval[0], self.interval[1], n)

    def check_unit(self, samples=17, tol=TOL_UNIT):
        for s in self.grid(samples):
            v0, v1 = self.dual_jets(s, 0)
            if abs(np.linalg.norm(v0.value) - 1.0) > tol:
                raise NotUnit(f"|v0({s})| deviates from 1 beyond {tol}")
            if abs(float(v0.value @ v1.value)) > tol:
                raise NotUnit(f"v0.v1 at s={s} deviates from 0 beyond {tol}")

    def check_non_cylindrical(self, samples=33, floor=CYL_FLOOR):
        for s in self.grid(samples):
            if self.speed(s) <= floor:
                raise CylindricalPoint(f"|v0'({s})| <= {floor}")

    def transformed(self, motion: DualQuaternion) -> "TransformedCurve":
        return TransformedCurve(self, motion)


def _as_jetvec(v, order):
    if isinstance(v, JetVec):
        return v
    comps = []
    for x in v:
        comps.append(x if isinstance(x, Jet) else Jet.constant(float(x), order))
    return JetVec.from_jets(*comps)


class AnalyticCurve(RuledCurveJet):
    """Curve defined by a generator evaluated in jet arithmetic.

    generator(s: Jet) must return (v0, v1) as JetVec or 3-sequences of
    Jet/float components; jets of any order come for free.
    """

    def __init__(self, generator, interval, k_max=12, name="", validate=True):
        super().__init__(interval, k_max=k_max, analytic=True)
        self._gen = generator
        self.name = name
        if validate:
            self.check_unit()

    @staticmethod
    def from_base_director(base_fn, director_fn, interval, k_max=12, name="", validate=True):
        """Build from r(s), e(s) callables (jet-valued); e is normalized
        and the moment is r x e, so the unit constraints hold exactly."""

        def gen(s):
            e = _as_jetvec(director_fn(s), s.order)
            r = _as_jetvec(base_fn(s), s.order)
            n = e.norm()
            v0 = e.scale(1.0 / n)
            v1 = r.cross(v0)
            return v0, v1

        return AnalyticCurve(gen, interval, k_max=k_max, name=name, validate=validate)

    def dual_jets(self, s, order):
        self._require_order(order)
        sj = Jet.variable(float(s), order)
        v0, v1 = self._gen(sj)
        return _as_jetvec(v0, order), _as_jetvec(v1, order)


class PolynomialDualCurve(RuledCurveJet):
    """Curve given by polynomial coefficient arrays for v0 and v1.

    Raw polynomial data is generally only approximately unit; evaluation
    projects it onto exact unit dual vectors (Pluecker normalization),
    which is the identity up to the truncation order at s = 0.
    """

    def __init__(self, v0_poly, v1_poly, interval, k_max=12, name="", normalize=True, validate=True):
        super().__init__(interval, k_max=k_max, analytic=True)
        self.v0_poly = np.asarray(v0_poly, dtype=float)
        self.v1_poly = np.asarray(v1_poly, dtype=float)
        self.normalize = normalize
        self.name = name
        if validate:
            self.check_unit()

    def _raw_jets(self, s, order):
        sj = Jet.variable(float(s), order)
        v0 = JetVec.from_jets(*[jets.polyval(row, sj) for row in self.v0_poly])
        v1 = JetVec.from_jets(*[jets.polyval(row, sj) for row in self.v1_poly])
        return v0, v1

    def dual_jets(self, s, order):
        self._require_order(order)
        v0, v1 = self._raw_jets(s, order)
        if not self.normalize:
            return v0, v1
        n = v0.norm()
        p = v0.dot(v1)
        w0 = v0.scale(1.0 / n)
        w1 = (v1 - v0.scale(p / (n * n))).scale(1.0 / n)
        return w0, w1


class TransformedCurve(RuledCurveJet):
    """Rigid motion of a curve: v0 -> R v0, v1 -> R v1 + c x R v0."""

    def __init__(self, base, motion: DualQuaternion):
        super().__init__(base.interval, k_max=base.k_max, analytic=base.analytic)
        self.base = base
        self.motion = motion
        self._rot, self._trans = motion.to_rotation_translation()

    def dual_jets(self, s, order):
        v0, v1 = self.base.dual_jets(s, order)
        w0 = self._rot @ v0.c
        w1 = self._rot @ v1.c + np.cross(self._trans, w0.T).T
        return JetVec(w0), JetVec(w1)


def arclength_dual_jets(curve, u, order):
    """Jets of the curve at parameter u with respect to the intrinsic
    arc length of v0 (local power-series reversion of s(u))."""
    curve._require_order(order + 1)
    v0, v1 = curve.dual_jets(u, order + 1)
    speed = v0.deriv().norm()
    if speed.value <= CYL_FLOOR:
        raise CylindricalPoint(f"|v0'({u})| = {speed.value} <= {CYL_FLOOR}")
    s_of = speed.antideriv(0.0)
    u_of = jets.invert(s_of)
    w0 = JetVec.from_jets(*[jets.compose(v0.component(i), u_of) for i in range(3)])
    w1 = JetVec.from_jets(*[jets.compose(v1.component(i), u_of) for i in range(3)])
    return w0.truncate(order), w1.truncate(order)


class ArclengthCurve(RuledCurveJet):
    """View of a curve reparameterized by the arc length of its director.

    The global map s(u) is accumulated by adaptive quadrature on a
    512-interval grid, inverted through monotone cubic interpolation and
    polished by safeguarded Newton steps; jets at a point come from the
    exact local series reversion.  The parameter is anchored so that
    s(a) = a on interval [a, b]: an already arc-length curve
    reparameterizes to the identity.
    """

    GRID = 512

    def __init__(self, base, grid=None):
        base.check_non_cylindrical()
        self.base = base
        n = (grid or self.GRID) + 1
        u = np.linspace(base.interval[0], base.interval[1], n)

        def spd(x):
            return base.speed(x)

        s = np.empty(n)
        s[0] = base.interval[0]
        for i in range(n - 1):
            seg, _ = quad(spd, u[i], u[i + 1], limit=60)
            s[i + 1] = s[i] + seg
        self._u_grid = u
        self._s_grid = s
        self._u_of_s = PchipInterpolator(s, u)
        super().__init__((s[0], s[-1]), k_max=base.k_max - 1, analytic=base.analytic)

    def u_of_s(self, sq):
        """Invert the arc-length map; interpolate then Newton-polish."""
        sq = float(sq)
        u = float(self._u_of_s(np.clip(sq, self._s_grid[0], self._s_grid[-1])))
        for _ in range(3):
            i = int(np.searchsorted(self._u_grid, u)) - 1
            i = min(max(i, 0), len(self._u_grid) - 2)
            local, _ = quad(self.base.speed, self._u_grid[i], u, limit=60)
            f = self._s_grid[i] + local - sq
            fp = self.base.speed(u)
            step = f / fp
            u -= step
            if abs(step) < 1e-13 * (1.0 + abs(u)):
                break
        return u

    def s_of_u(self, u):
        i = int(np.searchsorted(self._u_grid, u)) - 1
        i = min(max(i, 0), len(self._u_grid) - 2)
        local, _ = quad(self.base.speed, self._u_grid[i], float(u), limit=60)
        return float(self._s_grid[i] + local)

    def dual_jets(self, s, order):
        self._require_order(order)
        u = self.u_of_s(s)
        return arclength_dual_jets(self.base, u, order)


def arclength_reparam(curve: RuledCurveJet) -> RuledCurveJet:
    """Reparameterize a non-cylindrical curve by director arc length."""
    return ArclengthCurve(curve)


class SampledCurve(RuledCurveJet):
    """Curve known only through point samples; derivatives come from
    central finite differences with Richardson extrapolation.

    point_fn(s) must return the pair of 3-vectors (v0, v1).  Expect
    roughly 1e-8 relative derivative accuracy; analytic curves should be
    preferred whenever closed forms exist.
    """

    def __init__(self, point_fn, interval, k_max=8, validate=True):
        super().__init__(interval, k_max=k_max, analytic=False)
        self._fn = point_fn
        self._scale = 1.0 + 0.05 * (interval[1] - interval[0])
        if validate:
            self.check_unit(tol=1e-7)

    def dual_jets(self, s, order):
        self._require_order(order)

        def f0(x):
            return np.asarray(self._fn(x)[0], dtype=float)

        def f1(x):
            return np.asarray(self._fn(x)[1], dtype=float)

        d0 = np.array([jets.fd_derivative(f0, s, m, self._scale) for m in range(order + 1)])
        d1 = np.array([jets.fd_derivative(f1, s, m, self._scale) for m in range(order + 1)])
        fact = np.array([math.factorial(k) for k in range(order + 1)])
        return JetVec((d0 / fact[:, None]).T), JetVec((d1 / fact[:, None]).T)


# builtin surfaces ------------------------------------------------------------

def helicoid(pitch=1.0, interval=(-math.pi, math.pi)) -> AnalyticCurve:
    """Helicoid swept by horizontal lines through the z-axis rising with
    the given pitch; already parameterized by director arc length."""

    def gen(s):
        sn, cs = jets.sincos(s)
        e = JetVec.from_jets(cs, sn, Jet.constant(0.0, s.order))
        r = JetVec.from_jets(Jet.constant(0.0, s.order), Jet.constant(0.0, s.order), pitch * s)
        return e, r.cross(e)

    return AnalyticCurve(gen, interval, name=f"helicoid(pitch={pitch})")


def helix_tangent_developable(radius=1.0, pitch=0.5, interval=(0.5, 5.5)) -> AnalyticCurve:
    """Tangent developable of the circular helix
    (radius cos u, radius sin u, pitch u); its striction curve is the
    helix itself."""
    c = math.hypot(radius, pitch)

    def gen(s):
        sn, cs = jets.sincos(s)
        g = JetVec.from_jets(radius * cs, radius * sn, pitch * s)
        t = JetVec.from_jets((-radius / c) * sn, (radius / c) * cs, Jet.constant(pitch / c, s.order))
        return t, g.cross(t)

    return AnalyticCurve(gen, interval, name=f"helix_tangent_developable(a={radius}, h={pitch})")


def cone(half_angle=math.pi / 4, apex=(0.0, 0.0, 0.0), interval=(0.0, 2 * math.pi)) -> AnalyticCurve:
    """Circular cone: rulings through the apex with directors on a
    circle of the unit sphere at the given half-angle from the axis."""
    sb, cb = math.sin(half_angle), math.cos(half_angle)
    apex = np.asarray(apex, dtype=float)

    def gen(s):
        sn, cs = jets.sincos(s)
        e = JetVec.from_jets(sb * cs, sb * sn, Jet.constant(cb, s.order))
        a = JetVec.constant(apex, s.order)
        return e, a.cross(e)

    return AnalyticCurve(gen, interval, name=f"cone(half_angle={half_angle})")


BUILTIN_SURFACES = {
    "helicoid": helicoid,
    "helix-tangent-developable": helix_tangent_developable,
    "cone": cone,
}
