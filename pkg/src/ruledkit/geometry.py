"""Differential geometry of ruled surfaces through their dual curves.

Everything is driven by one engine, FramePoint, which turns the jets of
v(s) = v0 + eps*v1 at a point into intrinsic arc-length jets and derives
the moving frame (v, n, t), the dual curvature kappa = kappa0 + eps*kappa1,
the dual torsion tau = tau0 + eps*tau1, the striction curve and the
ruling offset.  Two independent computation routes exist for the
invariants -- the Frenet definitions (kappa = sqrt(v'.v'), tau = n'.t)
and the determinant formulas (kappa1 = det(e, e', r'),
tau0 = det(e, e', e''), tau1 = sigma'.e) -- and invariant_jet checks
them against each other.

Conventions: query points are given in the curve's own parameter; all
returned derivatives are with respect to the arc length of the director
v0 (the parameterization in which kappa0 = 1).
"""

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from scipy.optimize import brentq

from .curves import RuledCurveJet, arclength_dual_jets
from .dual import DualNumber, DualQuaternion, DualVector, UnitDualVector
from .errors import (
    DegenerateDirector,
    InvariantMismatch,
    NotDevelopable,
    NotSingular,
    OrderUnavailable,
)
from .jets import Jet, JetVec, det3
from .tolerances import TOL_DEVELOPABLE, TOL_UNIT, jet_tol

# dual-valued jets are (real, dual) pairs of Jet / JetVec ---------------------


def _ddot(u, v):
    u0, u1 = u
    v0, v1 = v
    return u0.dot(v0), u0.dot(v1) + u1.dot(v0)


def _dcross(u, v):
    u0, u1 = u
    v0, v1 = v
    return u0.cross(v0), u0.cross(v1) + u1.cross(v0)


def _dsqrt(a):
    a0, a1 = a
    r = a0.sqrt()
    return r, a1 / (2.0 * r)


def _dscale(a, v):
    a0, a1 = a
    v0, v1 = v
    return v0.scale(a0), v1.scale(a0) + v0.scale(a1)


def _dinv(a):
    a0, a1 = a
    inv = 1.0 / a0
    return inv, -(a1 * inv * inv)


def _dderiv(v):
    return v[0].deriv(), v[1].deriv()


@dataclass(frozen=True)
class DualFrame:
    """Orthonormal moving frame (v, n, t) of unit dual vectors."""

    v: UnitDualVector
    n: UnitDualVector
    t: UnitDualVector

    @staticmethod
    def identity():
        e = np.eye(3)
        z = np.zeros(3)
        return DualFrame(
            UnitDualVector(DualVector(e[0], z)),
            UnitDualVector(DualVector(e[1], z)),
            UnitDualVector(DualVector(e[2], z)),
        )

    def as_array(self):
        """Flatten to [v0 v1 n0 n1 t0 t1] for the integrator."""
        return np.concatenate(
            [
                self.v.direction, self.v.moment,
                self.n.direction, self.n.moment,
                self.t.direction, self.t.moment,
            ]
        )

    @staticmethod
    def from_array(y, tol=TOL_UNIT):
        y = np.asarray(y, dtype=float)
        return DualFrame(
            UnitDualVector(DualVector(y[0:3], y[3:6]), tol=tol),
            UnitDualVector(DualVector(y[6:9], y[9:12]), tol=tol),
            UnitDualVector(DualVector(y[12:15], y[15:18]), tol=tol),
        )

    def orthonormality_defect(self):
        """Max deviation over the nine dual orthonormality relations."""
        vs = [self.v.as_dual_vector(), self.n.as_dual_vector(), self.t.as_dual_vector()]
        worst = 0.0
        for i in range(3):
            for j in range(3):
                d = vs[i].dot(vs[j])
                want = 1.0 if i == j else 0.0
                worst = max(worst, abs(d.real - want), abs(d.dual))
        for i, j, k in ((0, 1, 2), (2, 0, 1), (1, 2, 0)):
            c = vs[i].cross(vs[j])
            worst = max(
                worst,
                float(np.max(np.abs(c.v0 - vs[k].v0))),
                float(np.max(np.abs(c.v1 - vs[k].v1))),
            )
        return worst


@dataclass(frozen=True)
class InvariantJet:
    """Derivative jets of the invariants at one point.

    Arrays hold derivative values [f, f', f'', ...] with respect to the
    director arc length; kappa0 is (1, 0, 0, ...) by normalization.
    """

    s: float
    kappa0: np.ndarray
    kappa1: np.ndarray
    tau0: np.ndarray
    tau1: np.ndarray

    @property
    def order(self):
        return len(self.kappa1) - 1

    def require(self, name, k):
        arr = getattr(self, name)
        if k >= len(arr):
            raise OrderUnavailable(f"{name} derivative of order {k} not in jet (order {len(arr) - 1})")
        return float(arr[k])


class FramePoint:
    """Jet engine at a single parameter value of a curve.

    order is the invariant order delivered; the curve is queried two
    orders deeper, in intrinsic arc length.
    """

    def __init__(self, curve: RuledCurveJet, s, order=4):
        self.curve = curve
        self.s = float(s)
        self.order = int(order)
        v0, v1 = arclength_dual_jets(curve, self.s, order + 2)
        self.V = (v0, v1)

    # Frenet-definition route -------------------------------------------------

    @cached_property
    def Vp(self):
        return _dderiv(self.V)

    @cached_property
    def kappa(self):
        """Dual curvature jets: sqrt(v'.v') = kappa0 + eps*kappa1."""
        return _dsqrt(_ddot(self.Vp, self.Vp))

    @cached_property
    def N(self):
        return _dscale(_dinv(self.kappa), self.Vp)

    @cached_property
    def T(self):
        return _dcross(self.V, self.N)

    @cached_property
    def tau(self):
        """Dual torsion jets: n'.t = tau0 + eps*tau1."""
        return _ddot(_dderiv(self.N), self.T)

    # determinant route (independent formulas) --------------------------------

    @cached_property
    def e(self):
        return self.V[0]

    @cached_property
    def r(self):
        """Base curve r = v0 x v1 (foot points of the rulings)."""
        return self.V[0].cross(self.V[1])

    @cached_property
    def offset_jet(self):
        """Ruling offset t0(s) = -(r'.e') locating the striction point."""
        return -(self.r.deriv().dot(self.e.deriv()))

    @cached_property
    def sigma(self):
        """Striction curve sigma = r - (r'.e') e."""
        return self.r + self.e.scale(self.offset_jet)

    @cached_property
    def det_invariants(self):
        ep = self.e.deriv()
        k1 = det3(self.e, ep, self.r.deriv())
        t0 = det3(self.e, ep, ep.deriv())
        t1 = self.sigma.deriv().dot(self.e)
        return k1, t0, t1

    # outputs ------------------------------------------------------------------

    def frame(self, tol=None) -> DualFrame:
        if tol is None:
            tol = TOL_UNIT if self.curve.analytic else 1e-6
        mk = lambda p: UnitDualVector(DualVector(p[0].value, p[1].value), tol=tol)
        return DualFrame(mk(self.V), mk(self.N), mk(self.T))

    def invariant_jet(self, order=None) -> InvariantJet:
        m = self.order if order is None else min(order, self.order)
        k0, k1 = self.kappa
        t0, t1 = self.tau
        return InvariantJet(
            self.s,
            k0.truncate(m).derivatives(),
            k1.truncate(m).derivatives(),
            t0.truncate(m).derivatives(),
            t1.truncate(m).derivatives(),
        )

    def invariant_jet_determinant(self, order=None) -> InvariantJet:
        m = self.order if order is None else min(order, self.order)
        k1, t0, t1 = self.det_invariants
        return InvariantJet(
            self.s,
            Jet.constant(1.0, m).derivatives(),
            k1.truncate(m).derivatives(),
            t0.truncate(m).derivatives(),
            t1.truncate(m).derivatives(),
        )

    def frenet_residual(self) -> float:
        """Sup-norm residual of d/ds [v n t] = M(kappa, tau) [v n t]."""
        k, t = self.kappa, self.tau
        res_v = _sub(_dderiv(self.V), _dscale(k, self.N))
        res_n = _add(_sub(_dderiv(self.N), _dscale(t, self.T)), _dscale(k, self.V))
        res_t = _add(_dderiv(self.T), _dscale(t, self.N))
        worst = 0.0
        for p in (res_v, res_n, res_t):
            worst = max(worst, np.max(np.abs(p[0].value)), np.max(np.abs(p[1].value)))
        return float(worst)


def _add(u, v):
    return u[0] + v[0], u[1] + v[1]


def _sub(u, v):
    return u[0] - v[0], u[1] - v[1]


# public operations -----------------------------------------------------------


def frenet_at(curve, s, order=2):
    """Moving frame and invariant jet at s.

    The frame lines of v, n, t meet perpendicular at the striction point
    sigma(s); kappa0 = 1 holds by the arc-length convention.
    """
    fp = FramePoint(curve, s, order=order)
    return fp.frame(), fp.invariant_jet()


def invariant_jet(curve, s0, order, check=True) -> InvariantJet:
    """Invariant jets (kappa1, tau0, tau1 and derivatives) at s0.

    When check is set, the Frenet-definition route is validated against
    the determinant formulas; disagreement beyond the cross-path
    tolerance raises InvariantMismatch.
    """
    fp = FramePoint(curve, s0, order=order)
    jet = fp.invariant_jet()
    if check:
        other = fp.invariant_jet_determinant()
        for name in ("kappa1", "tau0", "tau1"):
            a = getattr(jet, name)
            b = getattr(other, name)
            for k in range(len(a)):
                if abs(a[k] - b[k]) > jet_tol(a[k]):
                    raise InvariantMismatch(
                        f"{name}^({k})({s0}): {a[k]} vs {b[k]} beyond tolerance"
                    )
    return jet


def invariant_jet_paths(curve, s0, order):
    """Both computation routes, for cross-validation tests."""
    fp = FramePoint(curve, s0, order=order)
    return fp.invariant_jet(), fp.invariant_jet_determinant()


class ScalarInvariant:
    """One invariant as a function of the curve parameter."""

    def __init__(self, owner, name):
        self._owner = owner
        self._name = name

    def __call__(self, s):
        return float(getattr(self._owner.at(s), self._name)[0])

    def jet(self, s, order=None):
        return getattr(self._owner.at(s, order), self._name)


class DualInvariants:
    """The four invariant functions of a curve with jet access.

    kappa0 is identically 1 in the arc-length convention; kappa1, tau0,
    tau1 are the essential invariants.  Point queries are cached.
    """

    def __init__(self, curve, order=4):
        self.curve = curve
        self.order = order
        self.kappa0 = ScalarInvariant(self, "kappa0")
        self.kappa1 = ScalarInvariant(self, "kappa1")
        self.tau0 = ScalarInvariant(self, "tau0")
        self.tau1 = ScalarInvariant(self, "tau1")
        self._cache = lru_cache(maxsize=512)(self._compute)

    def _compute(self, s, order):
        return FramePoint(self.curve, s, order=order).invariant_jet()

    def at(self, s, order=None) -> InvariantJet:
        return self._cache(float(s), self.order if order is None else order)


def kappa1_value(curve, s) -> float:
    """kappa1 at s by the determinant formula (cheap scan evaluation)."""
    v0, v1 = curve.dual_jets(s, 2)
    e = v0
    r = v0.cross(v1)
    ep = e.deriv()
    w2 = float(ep.value @ ep.value)
    det = float(np.linalg.det(np.column_stack([e.value, ep.value, r.deriv().value])))
    return det / w2


class StrictionCurve:
    """The striction curve sigma(s): the locus of the common point of the
    frame lines, of minimal length among curves meeting all rulings.

    Derivative jets are with respect to director arc length; offset(s)
    gives the ruling parameter t0 with sigma = r + t0 * e.
    """

    def __init__(self, curve, order=4):
        self.curve = curve
        self.order = order

    def __call__(self, s):
        return self.jet(s, 0)[0]

    def jet(self, s, order=None):
        """Array (order+1, 3) of derivative values of sigma at s."""
        m = self.order if order is None else order
        fp = FramePoint(self.curve, s, order=m)
        sig = fp.sigma.truncate(m)
        fact = np.array([math.factorial(k) for k in range(m + 1)])
        return (sig.c * fact).T

    def offset(self, s):
        fp = FramePoint(self.curve, s, order=1)
        return fp.offset_jet.value


def striction(curve, order=4) -> StrictionCurve:
    """Striction curve of a non-cylindrical ruled surface."""
    curve.check_non_cylindrical()
    return StrictionCurve(curve, order=order)


class SurfaceParameterization:
    """Canonical ruled parameterization F(s, t) = r(s) + t e(s) with
    r = v0 x v1 and e = v0, so r.e = 0 and |e| = 1.

    Surfaces whose natural construction uses a different base/director
    pair (same image, sheared ruling parameter) may carry the raw
    evaluators; F_raw exposes that original form."""

    def __init__(self, curve: RuledCurveJet, raw_base=None, raw_director=None):
        self.curve = curve
        self.interval = curve.interval
        self._raw_base = raw_base
        self._raw_director = raw_director

    def F_raw(self, s, t):
        """The construction's own parameterization, when one was given."""
        if self._raw_base is None:
            return self(s, t)
        return np.asarray(self._raw_base(s), dtype=float) + t * np.asarray(
            self._raw_director(s), dtype=float
        )

    def r(self, s):
        return self.curve.base_point(s)

    def e(self, s):
        return self.curve.director(s)

    def __call__(self, s, t):
        return self.r(s) + t * self.e(s)

    def F(self, s, t):
        return self(s, t)

    def dF(self, s, t):
        """3x2 Jacobian [F_s, F_t] in the curve's own parameter."""
        v0, v1 = self.curve.dual_jets(s, 1)
        e = v0.value
        ep = v0.deriv().value
        rp = v0.cross(v1).deriv().value
        return np.column_stack([rp + t * ep, e])


def surface(curve) -> SurfaceParameterization:
    return SurfaceParameterization(curve)


@dataclass
class SingularLocus:
    """Result of the singular-point search.

    kind is "empty", "points", or "curve"; the latter flags a developable
    whose whole parameter line is singular with ruling offset t0(s), the
    image being the striction curve.
    """

    kind: str
    points: list
    offset: object = None

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def singular_locus(curve, n_grid=2048, tol=None) -> SingularLocus:
    """Locate the singular points of F(s,t): the roots s0 of kappa1
    paired with the unique offset t0 = -(r'.e'), by sign-change
    bracketing with Newton polish; multiple roots (kappa1 touching zero)
    are caught through sign changes of kappa1'.
    """
    curve.check_non_cylindrical()
    a, b = curve.interval
    ss = np.linspace(a, b, n_grid)
    vals = np.array([kappa1_value(curve, s) for s in ss])
    scale = float(np.max(np.abs(vals)))
    dev_tol = TOL_DEVELOPABLE if tol is None else tol
    if scale <= dev_tol:
        stric = StrictionCurve(curve, order=1)
        return SingularLocus("curve", [], offset=stric.offset)

    root_tol = 1e-7 * max(scale, 1e-30)
    roots = []

    def k1(s):
        return kappa1_value(curve, s)

    for i in range(n_grid - 1):
        if vals[i] == 0.0:
            roots.append(ss[i])
        elif vals[i] * vals[i + 1] < 0.0:
            roots.append(brentq(k1, ss[i], ss[i + 1], xtol=1e-14))
    # even-order roots: local minima of |kappa1| dipping below tolerance
    mag = np.abs(vals)
    for i in range(1, n_grid - 1):
        if mag[i] <= mag[i - 1] and mag[i] <= mag[i + 1] and mag[i] <= math.sqrt(root_tol * scale):
            s_star = _polish_even_root(curve, ss[i - 1], ss[i + 1])
            if s_star is not None and abs(k1(s_star)) <= root_tol:
                roots.append(s_star)
    if not roots:
        return SingularLocus("empty", [])
    roots = sorted(roots)
    merged = [roots[0]]
    span = b - a
    for s in roots[1:]:
        if s - merged[-1] > 1e-7 * span:
            merged.append(s)
    stric = StrictionCurve(curve, order=1)
    pts = [(float(s), float(stric.offset(s))) for s in merged if a <= s <= b]
    return SingularLocus("points", pts)


def _polish_even_root(curve, lo, hi):
    """Bisection on kappa1' to land on a touching root of kappa1."""

    def k1p(s):
        fp = FramePoint(curve, s, order=1)
        return fp.det_invariants[0].derivatives()

    da = k1p(lo)[1]
    db = k1p(hi)[1]
    if da == 0.0:
        return lo
    if db == 0.0:
        return hi
    if da * db > 0.0:
        return None
    for _ in range(80):
        s = 0.5 * (lo + hi)
        dm = k1p(s)[1]
        if dm == 0.0:
            return s
        if da * dm < 0.0:
            hi, db = s, dm
        else:
            lo, da = s, dm
    return 0.5 * (lo + hi)


def is_developable(curve, tol=TOL_DEVELOPABLE, samples=257) -> bool:
    """True iff kappa1 vanishes identically (sup over a sample grid)."""
    curve.check_non_cylindrical()
    worst = max(abs(kappa1_value(curve, s)) for s in curve.grid(samples))
    return worst <= tol


class FrontalData:
    """Frontal structure of a developable: unit normal nu = e x e'/|e x e'|,
    singularity function lambda(s,t) = det[F_s, F_t, nu], and a null
    field eta spanning ker dF along the singular locus.

    lambda here is the raw determinant, whose zero set is exactly the
    singular locus; the classifier uses its unit-normalized form (see
    eta_lambda_derivatives)."""

    def __init__(self, curve):
        self.curve = curve
        self.surface = SurfaceParameterization(curve)

    def nu(self, s, t=0.0):
        v0, _ = self.curve.dual_jets(s, 1)
        e = v0.value
        ep = v0.deriv().value
        n = np.cross(e, ep)
        m = np.linalg.norm(n)
        if m < 1e-12:
            raise DegenerateDirector(f"e x e' vanishes at s={s}")
        return n / m

    def lambda_raw(self, s, t):
        d = self.surface.dF(s, t)
        return float(np.linalg.det(np.column_stack([d[:, 0], d[:, 1], self.nu(s, t)])))

    def eta(self, s):
        """Null direction (1, -(r'.e)) in (s, t) coordinates; spans
        ker dF at the singular points of a developable."""
        v0, v1 = self.curve.dual_jets(s, 1)
        rp = v0.cross(v1).deriv().value
        return np.array([1.0, -float(rp @ v0.value)])

    def eta_lambda_derivatives(self, s0, kmax=4):
        """Iterated eta-derivatives of the normalized lambda at the
        singular point over s0.

        In canonical coordinates (x, y) at the singular point, the
        singular set is the graph x = X(y) and lambda = x - X(y), where
        X is the first canonical coordinate of the singular value curve
        (the striction curve); hence eta^k lambda = -X^(k)(0), i.e. minus
        the frozen-frame v0-component of the striction expansion.
        """
        fp = FramePoint(self.curve, s0, order=kmax)
        v0_frozen = fp.V[0].value
        sig = fp.sigma.truncate(kmax)
        fact = np.array([math.factorial(k) for k in range(kmax + 1)])
        x_derivs = (sig.c.T @ v0_frozen) * fact
        return -x_derivs[1:]


def frontal_data(curve, tol=TOL_DEVELOPABLE) -> FrontalData:
    """Frontal data of a developable surface; refuses generic ruled input."""
    if not is_developable(curve, tol=tol):
        raise NotDevelopable("kappa1 does not vanish identically")
    fd = FrontalData(curve)
    fd.nu(0.5 * (curve.interval[0] + curve.interval[1]))
    return fd


def canonical_frame_at(curve, s0) -> DualQuaternion:
    """Unit dual quaternion moving the frame at s0 into standard position:
    the lines of v, n, t onto the x, y, z axes (v0 -> i, n0 -> j, t0 -> k)
    and the striction point sigma(s0) to the origin."""
    fp = FramePoint(curve, s0, order=1)
    rot = np.vstack([fp.V[0].value, fp.N[0].value, fp.T[0].value])
    trans = -rot @ fp.sigma.value
    return DualQuaternion.from_rotation_translation(rot, trans)


@dataclass(frozen=True)
class CanonicalJet:
    """Taylor data of the motion-normalized parameterization.

    F(s, t) ~ sum_k base[:, k] s^k + t * sum_k ruling[:, k] s^k, with s
    the arc-length offset from the singular point, expressed in the
    canonical frame (v0 -> x, n0 -> y, t0 -> z, striction point at the
    origin)."""

    s0: float
    base: np.ndarray
    ruling: np.ndarray

    @property
    def order(self):
        return self.base.shape[1] - 1

    def evaluate(self, s, t):
        powers = s ** np.arange(self.base.shape[1])
        return self.base @ powers + t * (self.ruling @ powers)


def canonical_jet(curve, s0, order=3, tol=1e-7) -> CanonicalJet:
    """Canonical Taylor expansion of F at a singular point (s0, t0).

    Requires kappa1(s0) = 0; the ruling offset of the singular point
    becomes t = 0 in canonical position.
    """
    curve._require_order(order + 3)
    k1 = kappa1_value(curve, s0)
    if abs(k1) > tol:
        raise NotSingular(f"kappa1({s0}) = {k1} is nonzero; surface is immersive there")
    motion = canonical_frame_at(curve, s0)
    moved = curve.transformed(motion)
    v0, v1 = arclength_dual_jets(moved, s0, order + 1)
    r = v0.cross(v1)
    return CanonicalJet(float(s0), r.c[:, : order + 1].copy(), v0.c[:, : order + 1].copy())


def frenet_residual(curve, s) -> float:
    """Sup-norm of the Frenet system residual at s (arc-length form)."""
    return FramePoint(curve, s, order=1).frenet_residual()
