"""Building surfaces from invariants.

Prescribing kappa0 > 0 together with (kappa1, tau0, tau1) determines a
curve of unit dual vectors up to a rigid motion; the ambiguity is fixed
by the initial frame.  integrate_frenet solves the dual Frenet system
with classical RK4 and per-step dual Gram-Schmidt; the resulting curve
answers jet queries exactly through the Frenet recursion, so
classification at the anchor point costs no integration at all.

truncated_polynomial_surface realizes prescribed invariant jets by
polynomial dual-curve data; gallery instantiates one representative
surface per decidable classification label; versal_family_S1 shifts
kappa1 by a parameter through the S1 stratum.
"""

import math
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
from scipy.integrate import quad

from . import jets, kernels
from .classify import CODIMENSION, Label, classify_developable, classify_ruled
from .curves import ArclengthCurve, PolynomialDualCurve, RuledCurveJet
from .errors import (
    InvalidInitialFrame,
    NonPositiveKappa0,
    NotOnStratum,
    UnsupportedLabel,
)
from .geometry import DualFrame, DualInvariants, FramePoint, SurfaceParameterization, invariant_jet
from .jets import Jet, JetVec
from .tolerances import DEFAULT_STEP, ODE_TOL


class ScalarFn:
    """Scalar function with point values and Taylor jets."""

    def __call__(self, s) -> float:
        raise NotImplementedError

    def jet(self, s, order) -> Jet:
        raise NotImplementedError


class PolynomialFn(ScalarFn):
    def __init__(self, coeffs):
        self.coeffs = np.atleast_1d(np.asarray(coeffs, dtype=float))

    def __call__(self, s):
        return float(np.polynomial.polynomial.polyval(s, self.coeffs))

    def jet(self, s, order):
        return jets.polyval(self.coeffs, Jet.variable(float(s), order))


class JetCallableFn(ScalarFn):
    """Wraps a callable that accepts floats and Jet arguments alike."""

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, s):
        v = self.fn(s)
        return v.value if isinstance(v, Jet) else float(v)

    def jet(self, s, order):
        v = self.fn(Jet.variable(float(s), order))
        return v if isinstance(v, Jet) else Jet.constant(float(v), order)


class ShiftedFn(ScalarFn):
    def __init__(self, base, shift):
        self.base = base
        self.shift = float(shift)

    def __call__(self, s):
        return self.base(s) + self.shift

    def jet(self, s, order):
        return self.base.jet(s, order) + self.shift


class MeasuredFn(ScalarFn):
    """One invariant of an existing curve as a function of arc length."""

    def __init__(self, invariants: DualInvariants, name: str, reparam: ArclengthCurve | None):
        self._inv = invariants
        self._name = name
        self._reparam = reparam

    def _u(self, s):
        if self._reparam is None:
            return float(s)
        # interpolation-level inversion; the residual u-error is far below
        # the integration error this feeds
        lo, hi = self._reparam._s_grid[0], self._reparam._s_grid[-1]
        return float(self._reparam._u_of_s(np.clip(float(s), lo, hi)))

    def __call__(self, s):
        return float(getattr(self._inv.at(self._u(s)), self._name)[0])

    def jet(self, s, order):
        return Jet.from_derivatives(getattr(self._inv.at(self._u(s), order), self._name)[: order + 1])


def _as_fn(f) -> ScalarFn:
    if isinstance(f, ScalarFn):
        return f
    if callable(f):
        return JetCallableFn(f)
    return PolynomialFn(f)


@dataclass(frozen=True)
class InvariantPrescription:
    """Quadruple (kappa0, kappa1, tau0, tau1) of functions on an interval
    with kappa0 > 0; kappa1, tau0, tau1 are the arc-length invariants as
    functions of the prescription parameter and kappa0 is the speed
    ds/du.  Developable prescriptions have kappa1 identically zero."""

    kappa0: ScalarFn
    kappa1: ScalarFn
    tau0: ScalarFn
    tau1: ScalarFn
    interval: tuple

    @staticmethod
    def from_polynomials(kappa0, kappa1, tau0, tau1, interval):
        return InvariantPrescription(
            PolynomialFn(kappa0), PolynomialFn(kappa1),
            PolynomialFn(tau0), PolynomialFn(tau1), tuple(interval),
        )

    @staticmethod
    def from_functions(kappa0, kappa1, tau0, tau1, interval):
        return InvariantPrescription(
            _as_fn(kappa0), _as_fn(kappa1), _as_fn(tau0), _as_fn(tau1), tuple(interval)
        )

    @staticmethod
    def measured_from(curve, order=6, assume_arclength=False):
        """Measure a curve's invariants into a prescription (kappa0 = 1,
        parameterized by the director arc length)."""
        if assume_arclength:
            reparam = None
            inv = DualInvariants(curve, order=order)
            interval = curve.interval
        else:
            reparam = ArclengthCurve(curve)
            inv = DualInvariants(reparam, order=order)
            interval = reparam.interval
        return InvariantPrescription(
            PolynomialFn([1.0]),
            MeasuredFn(inv, "kappa1", reparam),
            MeasuredFn(inv, "tau0", reparam),
            MeasuredFn(inv, "tau1", reparam),
            interval,
        )

    def values(self, s):
        return np.array([self.kappa0(s), self.kappa1(s), self.tau0(s), self.tau1(s)])

    def values_grid(self, ss):
        return np.array([self.values(s) for s in ss])

    def jets_at(self, s, order):
        return (
            self.kappa0.jet(s, order),
            self.kappa1.jet(s, order),
            self.tau0.jet(s, order),
            self.tau1.jet(s, order),
        )

    def with_kappa1_shift(self, lam) -> "InvariantPrescription":
        return replace(self, kappa1=ShiftedFn(self.kappa1, lam))

    def check_kappa0_positive(self, samples=65):
        for s in np.linspace(self.interval[0], self.interval[1], samples):
            v = self.kappa0(s)
            if v <= 0.0:
                raise NonPositiveKappa0(f"kappa0({s}) = {v} <= 0")


def _apply_system(a, b, c, d, y):
    """One coefficient slice of the dual Frenet operator applied to a frame."""
    v0, v1 = y[0:3], y[3:6]
    n0, n1 = y[6:9], y[9:12]
    t0v, t1v = y[12:15], y[15:18]
    out = np.empty(18)
    out[0:3] = a * n0
    out[3:6] = a * n1 + b * n0
    out[6:9] = -a * v0 + c * t0v
    out[9:12] = -a * v1 - b * v0 + c * t1v + d * t0v
    out[12:15] = -c * n0
    out[15:18] = -c * n1 - d * n0
    return out


def frame_taylor(prescription, s, frame18, order):
    """Taylor coefficients (order+1, 18) of the frame at s, derived from
    the frame value and the prescription jets through the Frenet system
    (the series form of repeated differentiation of the moving frame)."""
    k0, k1, t0, t1 = prescription.jets_at(s, order)
    n = order + 1
    a = k0.pad(order).c
    b = kernels.series_mul(a, k1.pad(order).c)
    c = kernels.series_mul(a, t0.pad(order).c)
    d = kernels.series_mul(a, t1.pad(order).c)
    Y = np.empty((n, 18))
    Y[0] = frame18
    for j in range(order):
        acc = np.zeros(18)
        for i in range(j + 1):
            acc += _apply_system(a[i], b[i], c[i], d[i], Y[j - i])
        Y[j + 1] = acc / (j + 1)
    return Y


class ReconstructedCurve(RuledCurveJet):
    """Curve obtained by integrating the dual Frenet system.

    Jets at the anchor point come straight from the Frenet recursion and
    are exact; elsewhere the stored RK4 frames are sub-stepped to the
    query point first.  The dense grid is integrated lazily on first
    off-anchor use.
    """

    def __init__(self, prescription, init: DualFrame, interval=None, step=DEFAULT_STEP, s_init=None, k_max=12):
        interval = tuple(interval if interval is not None else prescription.interval)
        super().__init__(interval, k_max=k_max, analytic=True)
        defect = init.orthonormality_defect()
        if defect > 1e-8:
            raise InvalidInitialFrame(f"initial frame defect {defect} exceeds 1e-8")
        prescription.check_kappa0_positive()
        self.prescription = prescription
        self.init = init
        self.step = float(step)
        if s_init is None:
            a, b = interval
            s_init = 0.0 if a <= 0.0 <= b else a
        self.s_init = float(s_init)

    @cached_property
    def _dense(self):
        """(s_nodes, frames): two-sided fixed-step RK4 from the anchor."""
        a, b = self.interval
        y0 = self.init.as_array()
        nodes = [np.array([self.s_init])]
        frames = [y0[None, :]]
        if b > self.s_init:
            n = max(1, int(math.ceil((b - self.s_init) / self.step - 1e-12)))
            h = (b - self.s_init) / n
            ss = self.s_init + 0.5 * h * np.arange(2 * n + 1)
            fw = kernels.frenet_rk4(self.prescription.values_grid(ss), y0, h, n)
            nodes.append(self.s_init + h * np.arange(1, n + 1))
            frames.append(fw[1:])
        if a < self.s_init:
            n = max(1, int(math.ceil((self.s_init - a) / self.step - 1e-12)))
            h = -(self.s_init - a) / n
            ss = self.s_init + 0.5 * h * np.arange(2 * n + 1)
            bw = kernels.frenet_rk4(self.prescription.values_grid(ss), y0, h, n)
            nodes.insert(0, self.s_init + h * np.arange(n, 0, -1))
            frames.insert(0, bw[n:0:-1])
        s_nodes = np.concatenate(nodes)
        order = np.argsort(s_nodes)
        return s_nodes[order], np.vstack(frames)[order]

    @property
    def frames(self):
        """Sample grid of frames (s_nodes, (N, 18) array)."""
        return self._dense

    def frame_at(self, s):
        s = float(s)
        if s == self.s_init:
            return self.init.as_array()
        s_nodes, frames = self._dense
        i = int(np.clip(np.searchsorted(s_nodes, s), 1, len(s_nodes) - 1))
        if abs(s_nodes[i] - s) < abs(s_nodes[i - 1] - s):
            j = i
        else:
            j = i - 1
        base_s, y = s_nodes[j], frames[j]
        d = s - base_s
        if abs(d) < 1e-15:
            return y.copy()
        nsub = 2
        h = d / nsub
        ss = base_s + 0.5 * h * np.arange(2 * nsub + 1)
        out = kernels.frenet_rk4(self.prescription.values_grid(ss), y, h, nsub)
        return out[-1]

    def frame(self, s) -> DualFrame:
        return DualFrame.from_array(self.frame_at(s), tol=1e-6)

    def dual_jets(self, s, order):
        self._require_order(order)
        Y = frame_taylor(self.prescription, s, self.frame_at(s), order)
        return JetVec(Y[:, 0:3].T), JetVec(Y[:, 3:6].T)

    def orthonormality_defect(self):
        """Worst dual orthonormality defect over the stored frames."""
        _, frames = self._dense
        worst = 0.0
        for y in frames[:: max(1, len(frames) // 64)]:
            worst = max(worst, DualFrame.from_array(y, tol=math.inf).orthonormality_defect())
        return worst

    def invariant_roundtrip_error(self, samples=11, order=0):
        """Sup difference between remeasured invariants and the
        prescription over a sample grid."""
        worst = 0.0
        for s in np.linspace(self.interval[0], self.interval[1], samples):
            jet = invariant_jet(self, s, max(order, 1), check=False)
            want = self.prescription.values(s)
            worst = max(
                worst,
                abs(jet.kappa1[0] - want[1]),
                abs(jet.tau0[0] - want[2]),
                abs(jet.tau1[0] - want[3]),
            )
        return worst


def integrate_frenet(prescription, init: DualFrame | None = None, interval=None,
                     step=DEFAULT_STEP, s_init=None) -> ReconstructedCurve:
    """Reconstruct a curve of unit dual vectors from prescribed
    invariants by solving the dual Frenet system (RK4, fixed step, dual
    Gram-Schmidt renormalization each step).

    The initial frame (identity when omitted) fixes the rigid motion:
    two reconstructions from the same prescription differ exactly by the
    motion aligning their initial frames.
    """
    prescription = _coerce_prescription(prescription)
    if init is None:
        init = DualFrame.identity()
    return ReconstructedCurve(prescription, init, interval=interval, step=step, s_init=s_init)


def _coerce_prescription(p):
    if isinstance(p, InvariantPrescription):
        return p
    raise TypeError("expected an InvariantPrescription")


class TruncatedPolynomialCurve(PolynomialDualCurve):
    """Polynomial dual-curve data realizing prescribed invariant jets.

    The raw polynomials v0_poly, v1_poly agree with an exact solution
    curve to the stored truncation order; evaluation projects onto exact
    unit dual vectors, which at s=0 is the identity to that order, so
    the invariant jets at 0 match the prescription."""

    def __init__(self, v0_poly, v1_poly, interval, prescription, prescribed_order, k_max=12):
        super().__init__(v0_poly, v1_poly, interval, k_max=k_max, normalize=True)
        self.prescription = prescription
        self.prescribed_order = prescribed_order


def truncated_polynomial_surface(kappa1_jet, tau0_jet, tau1_jet, order=None,
                                 interval=(-0.5, 0.5)) -> TruncatedPolynomialCurve:
    """Polynomial ruled surface with prescribed invariant jets at s = 0.

    The jets are derivative values (f(0), f'(0), ...); they are extended
    to polynomial invariant functions, the Frenet system is expanded at
    0, and the curve's Taylor data is truncated two orders beyond the
    prescription so all prescribed derivatives survive measurement.
    """
    k1 = np.atleast_1d(np.asarray(kappa1_jet, dtype=float))
    t0 = np.atleast_1d(np.asarray(tau0_jet, dtype=float))
    t1 = np.atleast_1d(np.asarray(tau1_jet, dtype=float))
    if order is None:
        order = max(len(k1), len(t0), len(t1), 4) - 1
    if order > 8:
        raise ValueError("prescribed jet order must be <= 8")

    def poly(jet):
        fact = np.array([math.factorial(k) for k in range(len(jet))])
        return jet / fact

    prescription = InvariantPrescription.from_polynomials(
        [1.0], poly(k1), poly(t0), poly(t1), interval
    )
    Y = frame_taylor(prescription, 0.0, DualFrame.identity().as_array(), order + 2)
    v0_poly, v1_poly = Y[:, 0:3].T, Y[:, 3:6].T
    lo, hi = _healthy_domain(v0_poly, interval)
    return TruncatedPolynomialCurve(v0_poly, v1_poly, (lo, hi), prescription, order)


def _healthy_domain(v0_poly, interval):
    """Restrict to where the raw polynomial director stays near unit."""
    lo, hi = interval
    ss = np.linspace(lo, hi, 101)
    pv = np.polynomial.polynomial.polyval(ss, v0_poly.T)  # (3, 101)
    defect = np.abs(np.linalg.norm(pv, axis=0) - 1.0)
    ok = defect <= 0.05
    mid = 50
    i = mid
    while i > 0 and ok[i - 1]:
        i -= 1
    j = mid
    while j < 100 and ok[j + 1]:
        j += 1
    return float(ss[i]), float(ss[j])


def tangent_developable_of_type(m, l, r, phi=None, varphi=None,
                                interval=(-0.45, 0.45)) -> SurfaceParameterization:
    """Tangent developable of a space-curve germ of type (m, m+l, m+l+r):

        x = t
        y = s^(m+l) + s^(m+l+1) varphi(s) + t (s^l + s^(l+1) phi(s))
        z = (l+r)(m+l+r) * integral_0^s u^r dy/du du

    phi (ruling part) and varphi (base part) may be polynomial
    coefficient arrays, jet-capable callables, or None (zero).  z is
    integrated exactly for polynomial inputs and by adaptive quadrature
    otherwise.  Types with l >= 2 are cylindrical at s = 0 by nature;
    the parameterization is still returned, but frame operations refuse
    that point.
    """
    if min(m, l, r) < 1:
        raise ValueError(f"type exponents must satisfy m, l, r >= 1, got ({m}, {l}, {r})")
    phi_fn = _as_fn(phi if phi is not None else [0.0])
    varphi_fn = _as_fn(varphi if varphi is not None else [0.0])
    factor = float((l + r) * (m + l + r))

    yb = _monomial_plus_tail(m + l, varphi_fn)
    yr = _monomial_plus_tail(l, phi_fn)
    zb = _weighted_antiderivative(yb, r, factor)
    zr = _weighted_antiderivative(yr, r, factor)

    from .curves import AnalyticCurve

    def base_fn(s):
        return (Jet.constant(0.0, s.order), yb(s), zb(s))

    def director_fn(s):
        return (Jet.constant(1.0, s.order), yr(s), zr(s))

    curve = AnalyticCurve.from_base_director(
        base_fn, director_fn, interval, name=f"tangent_developable({m},{l},{r})"
    )

    def raw_point(part_fn):
        def fn(s):
            j = part_fn(Jet.variable(float(s), 1))
            return j.value

        return fn

    raw_base = lambda s: np.array([0.0, raw_point(yb)(s), raw_point(zb)(s)])
    raw_director = lambda s: np.array([1.0, raw_point(yr)(s), raw_point(zr)(s)])
    return SurfaceParameterization(curve, raw_base=raw_base, raw_director=raw_director)


def _monomial_plus_tail(k, tail_fn: ScalarFn):
    """Jet-callable for s^k + s^(k+1) * tail(s).

    The argument is always a seeded Taylor variable (as produced by
    AnalyticCurve), so tail(s) is tail_fn.jet at its base point.
    """

    if isinstance(tail_fn, PolynomialFn):
        coeffs = np.zeros(k + 1 + len(tail_fn.coeffs))
        coeffs[k] = 1.0
        coeffs[k + 1 :] += tail_fn.coeffs
        return lambda s: jets.polyval(coeffs, s)

    def fn(s: Jet) -> Jet:
        return s**k + (s ** (k + 1)) * tail_fn.jet(s.value, s.order)

    return fn


def _weighted_antiderivative(part_fn, r, factor):
    """Jet-callable s -> factor * integral_0^s u^r (d part/du) du."""

    def g_value(u):
        j = part_fn(Jet.variable(float(u), 1))
        return float(u) ** r * j.c[1]

    def fn(s: Jet) -> Jet:
        s0 = s.value
        pj = part_fn(Jet.variable(s0, s.order + 1))
        g = (Jet.variable(s0, s.order) ** r) * pj.deriv()
        val, _ = quad(g_value, 0.0, s0, limit=100)
        return (g.antideriv(0.0) * factor + factor * val).truncate(s.order)

    return fn


GALLERY_PRESCRIPTIONS = {
    # label: (kappa1, tau0, tau1) polynomial coefficients, kappa0 = 1
    Label.S0: ([0.0, 1.0], [0.0], [0.0]),
    Label.S1_PLUS: ([0.0, 0.0, 1.0], [0.0], [1.0]),
    Label.S1_MINUS: ([0.0, 0.0, 1.0], [2.0], [1.0]),
    Label.S2: ([0.0, 0.0, 0.0, 1.0], [1.0], [1.0]),
    Label.S3_PLUS: ([0.0, 0.0, 0.0, 0.0, -1.0], [1.0], [1.0]),
    Label.S3_MINUS: ([0.0, 0.0, 0.0, 0.0, 1.0], [1.0], [1.0]),
    Label.S4: ([0.0, 0.0, 0.0, 0.0, 0.0, 1.0], [1.0], [1.0]),
    Label.B2_PLUS: ([0.0, 0.0, 2.0], [2.0], [1.0]),
    Label.B2_MINUS: ([0.0, 0.0, 1.0], [1.0], [1.0]),
    Label.H2: ([0.0, 0.0, 1.0], [1.0, 1.0], [0.0]),
    Label.C3_PLUS: ([0.0, 0.0, 0.0, 1.0], [0.0], [1.0]),
    Label.C3_MINUS: ([0.0, 0.0, 0.0, 1.0], [0.0, 4.0], [1.0]),
    Label.C4_PLUS: ([0.0, 0.0, 0.0, 0.0, -1.0], [0.0, 1.0], [1.0]),
    Label.C4_MINUS: ([0.0, 0.0, 0.0, 0.0, 1.0], [0.0, 1.0], [1.0]),
    Label.C5_PLUS: ([0.0, 0.0, 0.0, 0.0, 0.0, -1.0], [0.0, 1.0], [1.0]),
    Label.C5_MINUS: ([0.0, 0.0, 0.0, 0.0, 0.0, 1.0], [0.0, 1.0], [1.0]),
    Label.F4: ([0.0, 0.0, 0.0, 1.0, 1.0], [0.0, 3.0], [1.0]),
    Label.CE: ([0.0], [1.0], [1.0]),
    Label.CS0: ([0.0], [0.0, 1.0], [1.0]),
    Label.CS1_PLUS: ([0.0], [0.0, 0.0, 1.0], [1.0]),
    Label.CC3_PLUS: ([0.0], [0.0, 0.0, 0.0, 1.0], [1.0]),
    Label.SW: ([0.0], [1.0], [0.0, 1.0]),
    Label.CA4: ([0.0], [1.0], [0.0, 0.0, 1.0]),
    Label.CA5: ([0.0], [1.0], [0.0, 0.0, 0.0, 1.0]),
    Label.T1: ([0.0], [0.0], [0.0, 1.0]),
    Label.T2: ([0.0], [0.0, 1.0], [0.0, 0.0, 1.0]),
}

DEVELOPABLE_LABELS = {
    Label.CE, Label.CS0, Label.CS1_PLUS, Label.CC3_PLUS,
    Label.SW, Label.CA4, Label.CA5, Label.T1, Label.T2,
}


def gallery_prescription(label) -> InvariantPrescription:
    """The frozen small-integer prescription realizing a label at s = 0."""
    label = Label(label)
    if label not in GALLERY_PRESCRIPTIONS:
        raise UnsupportedLabel(
            f"no constructible prescription for {label.value} "
            "(moduli-dependent candidate rows cannot be pinned without b3/h3/p4)"
        )
    k1, t0, t1 = GALLERY_PRESCRIPTIONS[label]
    return InvariantPrescription.from_polynomials([1.0], k1, t0, t1, (-0.5, 0.5))


def gallery(label, step=2e-3, validate=True) -> ReconstructedCurve:
    """A surface whose classification at s = 0 equals the given label.

    The returned curve carries its prescription; with validate set the
    classifier verdict is re-checked before returning.
    """
    label = Label(label)
    p = gallery_prescription(label)
    curve = integrate_frenet(p, step=step)
    curve.label = label
    if validate:
        inv = invariant_jet(curve, 0.0, 6, check=False)
        rep = (
            classify_developable(inv)
            if label in DEVELOPABLE_LABELS
            else classify_ruled(inv)
        )
        if rep.label is not label:
            raise AssertionError(
                f"gallery prescription for {label.value} classified as {rep.label.value}"
            )
    return curve


@dataclass
class DeformationFamily:
    """Family of prescriptions over a parameter box W (dim <= 3);
    the base prescription sits at parameter zero."""

    base: InvariantPrescription
    box: tuple

    def prescription(self, lam) -> InvariantPrescription:
        return self.base.with_kappa1_shift(lam)

    def curve(self, lam, step=DEFAULT_STEP, interval=None) -> ReconstructedCurve:
        return integrate_frenet(self.prescription(lam), interval=interval, step=step)


def versal_family_S1(base: InvariantPrescription, box=((-0.05, 0.05),)) -> DeformationFamily:
    """One-parameter family kappa1 -> kappa1 + lam through an S1 point.

    The base must satisfy the S1 stratum conditions at 0: kappa1 and
    kappa1' vanish, tau1 != 0, and kappa1'' differs from both 0 and
    2 tau0 tau1.  Crossing lam = 0 creates or destroys a pair of
    crosscap points, mirroring the miniversal model y^3 +- x^2 y + lam y.
    """
    k1 = base.kappa1.jet(0.0, 2).derivatives()
    t0v = base.tau0(0.0)
    t1v = base.tau1(0.0)
    if abs(k1[0]) > 1e-9 or abs(k1[1]) > 1e-9:
        raise NotOnStratum("kappa1 and kappa1' must vanish at 0")
    if abs(t1v) < 1e-9:
        raise NotOnStratum("tau1(0) must be nonzero")
    if abs(k1[2]) < 1e-9 or abs(k1[2] - 2.0 * t0v * t1v) < 1e-9:
        raise NotOnStratum("kappa1''(0) must differ from 0 and 2 tau0 tau1")
    return DeformationFamily(base, tuple(box))
