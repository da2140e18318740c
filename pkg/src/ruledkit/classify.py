"""Singularity classification of ruled and developable surfaces from
invariant jets.

The decision trees implement the recognition conditions for Mond's
A-types of map-germs (R^2,0) -> (R^3,0) realized by ruled surfaces
(crosscap S0, S_k, B_k, C_k, H_k, F4, P3) and for the frontal/wavefront
types of developables (cuspidal edge, cuspidal crosscap, swallowtail,
cA4, cA5, cS1+, cC3+, T1, T2), walking jets from low order upwards so a
report always shows the first failed condition.  Zero tests are
order-detection thresholds on normalized jets; borderline sign tests
descend to the deeper stratum, and exhausted trees return Unresolved
rather than guess.

B3/H3/P3 carry moduli (b3, h3, p4) with no closed form available here,
so they are reported as *_candidate with the necessary conditions that
were verified.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import (
    DegenerateSingularity,
    InsufficientJetOrder,
    NotDevelopable,
    NoVerdict,
    OrderUndetectable,
)
from .geometry import FrontalData, InvariantJet
from .tolerances import TOL_CLS

INFINITE = math.inf


class Label(str, Enum):
    """Classification verdicts; values are the conventional type names."""

    IMMERSION = "Immersion"
    S0 = "S0"
    S1_PLUS = "S1+"
    S1_MINUS = "S1-"
    S2 = "S2"
    S3_PLUS = "S3+"
    S3_MINUS = "S3-"
    S4 = "S4"
    B2_PLUS = "B2+"
    B2_MINUS = "B2-"
    B3_CANDIDATE = "B3_candidate"
    H2 = "H2"
    H3_CANDIDATE = "H3_candidate"
    C3_PLUS = "C3+"
    C3_MINUS = "C3-"
    C4_PLUS = "C4+"
    C4_MINUS = "C4-"
    C5_PLUS = "C5+"
    C5_MINUS = "C5-"
    F4 = "F4"
    P3_CANDIDATE = "P3_candidate"
    CE = "cE"
    CS0 = "cS0"
    CS1_PLUS = "cS1+"
    CC3_PLUS = "cC3+"
    SW = "Sw"
    CA4 = "cA4"
    CA5 = "cA5"
    T1 = "T1"
    T2 = "T2"
    UNRESOLVED = "Unresolved"


#: A-codimension (the deformation-parameter count proxy) per label
CODIMENSION = {
    Label.IMMERSION: 0,
    Label.S0: 2,
    Label.S1_PLUS: 3,
    Label.S1_MINUS: 3,
    Label.S2: 4,
    Label.B2_PLUS: 4,
    Label.B2_MINUS: 4,
    Label.H2: 4,
    Label.S3_PLUS: 5,
    Label.S3_MINUS: 5,
    Label.C3_PLUS: 5,
    Label.C3_MINUS: 5,
    Label.B3_CANDIDATE: 5,
    Label.H3_CANDIDATE: 5,
    Label.P3_CANDIDATE: 5,
    Label.S4: 6,
    Label.C4_PLUS: 6,
    Label.C4_MINUS: 6,
    Label.C5_PLUS: 7,
    Label.C5_MINUS: 7,
    Label.F4: 6,
    Label.CE: 1,
    Label.CS0: 2,
    Label.CS1_PLUS: 3,
    Label.CC3_PLUS: 4,
    Label.SW: 2,
    Label.CA4: 3,
    Label.CA5: 4,
    Label.T1: 3,
    Label.T2: 4,
    Label.UNRESOLVED: None,
}


@dataclass(frozen=True)
class Condition:
    """One evaluated predicate of a decision tree."""

    text: str
    value: float
    threshold: float
    verdict: bool


@dataclass
class SingularityReport:
    label: Label
    codimension: int | None
    conditions: list = field(default_factory=list)
    location: tuple | None = None
    caveats: list = field(default_factory=list)
    moduli: dict = field(default_factory=dict)

    def __str__(self):
        loc = "" if self.location is None else f" at (s,t)=({self.location[0]:.6g},{self.location[1]:.6g})"
        return f"{self.label.value} (codim {self.codimension}){loc}"


@dataclass(frozen=True)
class ModuliCoefficients:
    """The degree-5 moduli of the B- and H-branches, polynomial in the
    invariant derivatives at the point."""

    b2: float
    h2: float


@dataclass(frozen=True)
class CurveType:
    """Space-curve germ type (m, m+l, m+l+r) of the striction curve."""

    m: int
    l: int
    r: int
    determinativity: str

    @property
    def triple(self):
        return (self.m, self.m + self.l, self.m + self.l + self.r)


def vanishing_order(jet, tol=TOL_CLS):
    """Smallest k with |jet[k]| > tol * scale, scale = max(1, max|jet|);
    INFINITE if no entry clears the threshold."""
    jet = np.asarray(jet, dtype=float)
    if len(jet) == 0:
        raise InsufficientJetOrder("empty jet")
    scale = max(1.0, float(np.max(np.abs(jet))))
    for k, v in enumerate(jet):
        if abs(v) > tol * scale:
            return k
    return INFINITE


class _Tree:
    """Collects evaluated conditions while walking a decision tree."""

    def __init__(self, tol):
        self.tol = tol
        self.conditions = []

    def record(self, text, value, threshold, verdict):
        self.conditions.append(Condition(text, float(value), float(threshold), bool(verdict)))
        return verdict

    def is_zero(self, text, value, scale=1.0):
        thr = self.tol * max(1.0, abs(scale))
        return self.record(f"{text} = 0", value, thr, abs(value) <= thr)

    def nonzero(self, text, value, scale=1.0):
        thr = self.tol * max(1.0, abs(scale))
        return self.record(f"{text} != 0", value, thr, abs(value) > thr)

    def sign(self, text, value, scale=1.0):
        """-1, 0, +1 with the 0 band given by the tolerance."""
        thr = self.tol * max(1.0, abs(scale))
        if abs(value) <= thr:
            self.record(f"sign({text})", value, thr, False)
            return 0
        self.record(f"sign({text})", value, thr, True)
        return 1 if value > 0 else -1


def _sgn(x):
    return 1 if x > 0 else (-1 if x < 0 else 0)


def _need(inv: InvariantJet, name: str, order: int):
    arr = getattr(inv, name)
    if order >= len(arr):
        raise InsufficientJetOrder(
            f"classification needs {name} to order {order}, jet has order {len(arr) - 1}"
        )
    return float(arr[order])


def moduli_coefficients(inv: InvariantJet) -> ModuliCoefficients:
    """Evaluate the printed closed forms of b2 and h2 from the invariant
    derivatives at the point (jets to order 4 in kappa1, 2 in tau0,
    3 in tau1 required)."""
    k2 = _need(inv, "kappa1", 2)
    k3 = _need(inv, "kappa1", 3)
    k4 = _need(inv, "kappa1", 4)
    t0 = _need(inv, "tau0", 0)
    t0p = _need(inv, "tau0", 1)
    t0pp = _need(inv, "tau0", 2)
    t1 = _need(inv, "tau1", 0)
    t1p = _need(inv, "tau1", 1)
    t1pp = _need(inv, "tau1", 2)
    t1ppp = _need(inv, "tau1", 3)

    b2 = (
        48.0 * t0**2 * t1**2 * (t0**2 - 2.0)
        - 20.0 * (t0**2 * t1p**2 + t1**2 * t0p**2)
        - 56.0 * t0 * t1 * t0p * t1p
        - 24.0 * t0 * t1 * (t0 * t1pp + t1 * t0pp)
        + 20.0 * k3 * (t0 * t1p + t1 * t0p)
        - 5.0 * k3**2
        + 6.0 * k4 * t0 * t1
    )
    h2 = (
        -15.0 * t0**2 * t1p**3
        - 24.0 * t0p * t1p**2 * k2
        - 36.0 * t1p * k2**2
        - 15.0 * t0**2 * t1p * k2**2
        - 24.0 * t0p * k2**3
        - 21.0 * t0 * t1p * k2 * t1pp
        + 20.0 * t0 * t1p**2 * k3
        - t0 * k2**2 * k3
        + 5.0 * k2 * t1pp * k3
        - 5.0 * t1p * k3**2
        - 4.0 * k2**2 * t1ppp
        + 4.0 * t1p * k2 * k4
    )
    return ModuliCoefficients(b2=b2, h2=h2)


def _report(tree, label, location, caveats=(), moduli=None):
    return SingularityReport(
        label=label,
        codimension=CODIMENSION[label],
        conditions=tree.conditions,
        location=location,
        caveats=list(caveats),
        moduli=moduli or {},
    )


def classify_ruled(inv: InvariantJet, tol=TOL_CLS, location=None) -> SingularityReport:
    """A-type of the parameterization germ of a ruled surface at a point
    with kappa1 = 0 (Immersion is returned when kappa1 != 0).

    Walks the 2-jet / 3-jet / S-B-C-H-P refinements in order; jets whose
    kappa1 vanishes to the available order are routed to the developable
    table, since no ruled-type label applies to developables.
    """
    if len(inv.kappa1) < 3:
        raise InsufficientJetOrder("classify_ruled needs kappa1 jets to order >= 2")
    tree = _Tree(tol)
    k1 = inv.kappa1
    o = vanishing_order(k1, tol)
    scale_k = max(1.0, float(np.max(np.abs(k1))))

    if o == 0:
        tree.nonzero("kappa1", k1[0], scale_k)
        return _report(tree, Label.IMMERSION, location)
    tree.is_zero("kappa1", k1[0], scale_k)

    if o == INFINITE:
        rep = classify_developable(inv, tol=tol, location=location)
        rep.conditions = tree.conditions + rep.conditions
        rep.caveats.insert(
            0, "kappa1 vanishes to the available jet order: developable table applied"
        )
        return rep

    if o == 1:
        tree.nonzero("kappa1'", k1[1], scale_k)
        return _report(tree, Label.S0, location)
    tree.is_zero("kappa1'", k1[1], scale_k)

    t1 = _need(inv, "tau1", 0)
    t0 = _need(inv, "tau0", 0)
    scale_t1 = max(1.0, float(np.max(np.abs(inv.tau1))))
    scale_t0 = max(1.0, float(np.max(np.abs(inv.tau0))))

    if tree.nonzero("tau1", t1, scale_t1):
        return _classify_ruled_tau1_nonzero(inv, tree, o, t0, t1, tol, location, scale_k, scale_t0)
    return _classify_ruled_tau1_zero(inv, tree, o, t0, tol, location, scale_k)


def _classify_ruled_tau1_nonzero(inv, tree, o, t0, t1, tol, location, scale_k, scale_t0):
    k1 = inv.kappa1
    if o == 2:
        k2 = k1[2]
        tree.nonzero("kappa1''", k2, scale_k)
        z = k2 - 2.0 * t0 * t1
        s = tree.sign("kappa1'' - 2 tau0 tau1", z, max(abs(k2), abs(2 * t0 * t1), scale_k))
        if s != 0:
            disc = 1 if (k2 > 0) == (z > 0) else -1
            tree.record("kappa1''(kappa1'' - 2 tau0 tau1) > 0", k2 * z, 0.0, disc > 0)
            return _report(tree, Label.S1_PLUS if disc > 0 else Label.S1_MINUS, location)
        # B-branch: kappa1'' = 2 tau0 tau1 != 0
        mod = moduli_coefficients(inv)
        sb = tree.sign("b2", mod.b2, 1.0)
        if sb > 0:
            return _report(tree, Label.B2_PLUS, location, moduli={"b2": mod.b2})
        if sb < 0:
            return _report(tree, Label.B2_MINUS, location, moduli={"b2": mod.b2})
        return _report(
            tree,
            Label.B3_CANDIDATE,
            location,
            caveats=["b3 has no printed closed form; only b2 = 0 was verified"],
            moduli={"b2": mod.b2},
        )
    tree.is_zero("kappa1''", k1[2], scale_k)

    if tree.nonzero("tau0", t0, scale_t0):
        # S-branch: kappa1'' = 0, tau0 tau1 != 0
        if o == 3:
            tree.nonzero("kappa1'''", k1[3], scale_k)
            return _report(tree, Label.S2, location)
        tree.is_zero("kappa1'''", _need(inv, "kappa1", 3), scale_k)
        if o == 4:
            disc = _sgn(k1[4]) * _sgn(t0) * _sgn(t1)
            tree.record("kappa1'''' tau0 tau1 < 0", k1[4] * t0 * t1, 0.0, disc < 0)
            return _report(tree, Label.S3_PLUS if disc < 0 else Label.S3_MINUS, location)
        tree.is_zero("kappa1''''", _need(inv, "kappa1", 4), scale_k)
        if o == 5:
            tree.nonzero("kappa1^(5)", k1[5], scale_k)
            return _report(tree, Label.S4, location)
        return _report(tree, Label.UNRESOLVED, location,
                       caveats=["kappa1 vanishes beyond the deepest recognized S-type"])

    # C-branch: kappa1'' = tau0 = 0, tau1 != 0
    t0p = _need(inv, "tau0", 1)
    t1v = _need(inv, "tau1", 0)
    if o == 3:
        k3 = k1[3]
        tree.nonzero("kappa1'''", k3, scale_k)
        z = k3 - 2.0 * t0p * t1v
        s = tree.sign("kappa1''' - 2 tau0' tau1", z, max(abs(k3), abs(2 * t0p * t1v), scale_k))
        if s != 0:
            disc = 1 if (k3 > 0) == (z > 0) else -1
            tree.record("kappa1'''(kappa1''' - 2 tau0' tau1) > 0", k3 * z, 0.0, disc > 0)
            return _report(tree, Label.C3_PLUS if disc > 0 else Label.C3_MINUS, location)
        # kappa1''' = 2 tau0' tau1 != 0
        f4 = 3.0 * _need(inv, "kappa1", 4) - 8.0 * t0p * _need(inv, "tau1", 1) - 12.0 * t1v * _need(inv, "tau0", 2)
        if tree.nonzero("3 kappa1'''' - 8 tau0' tau1' - 12 tau1 tau0''", f4, scale_k):
            return _report(tree, Label.F4, location)
        return _report(tree, Label.UNRESOLVED, location,
                       caveats=["F4 discriminant vanishes; codimension exceeds the recognized range"])
    tree.is_zero("kappa1'''", _need(inv, "kappa1", 3), scale_k)

    if not tree.nonzero("tau0'", t0p, scale_t0):
        return _report(tree, Label.UNRESOLVED, location,
                       caveats=["kappa1''' = tau0' = 0: codimension >= 7, outside the recognized range"])
    if o == 4:
        disc = _sgn(k1[4]) * _sgn(t0p) * _sgn(t1v)
        tree.record("kappa1'''' tau0' tau1 < 0", k1[4] * t0p * t1v, 0.0, disc < 0)
        return _report(tree, Label.C4_PLUS if disc < 0 else Label.C4_MINUS, location)
    tree.is_zero("kappa1''''", _need(inv, "kappa1", 4), scale_k)
    if o == 5:
        disc = _sgn(k1[5]) * _sgn(t0p) * _sgn(t1v)
        tree.record("kappa1^(5) tau0' tau1 < 0", k1[5] * t0p * t1v, 0.0, disc < 0)
        return _report(tree, Label.C5_PLUS if disc < 0 else Label.C5_MINUS, location)
    return _report(tree, Label.UNRESOLVED, location,
                   caveats=["kappa1 vanishes beyond the deepest recognized C-type"])


def _classify_ruled_tau1_zero(inv, tree, o, t0, tol, location, scale_k):
    k1 = inv.kappa1
    if o == 2:
        tree.nonzero("kappa1''", k1[2], scale_k)
        mod = moduli_coefficients(inv)
        if tree.nonzero("h2", mod.h2, 1.0):
            return _report(tree, Label.H2, location, moduli={"h2": mod.h2})
        return _report(
            tree,
            Label.H3_CANDIDATE,
            location,
            caveats=["h3 has no printed closed form; only h2 = 0 was verified"],
            moduli={"h2": mod.h2},
        )
    tree.is_zero("kappa1''", k1[2], scale_k)

    t1p = _need(inv, "tau1", 1)
    scale_t0 = max(1.0, float(np.max(np.abs(inv.tau0))))
    if tree.nonzero("tau0 tau1'", t0 * t1p, scale_t0):
        return _report(
            tree,
            Label.P3_CANDIDATE,
            location,
            caveats=[
                "p4 has no printed closed form; the exceptional values "
                "p4 in {0, 1/2, 1, 3/2} could not be excluded"
            ],
        )
    return _report(tree, Label.UNRESOLVED, location,
                   caveats=["3-jet types with kappa1'' = tau1 = tau0 tau1' = 0 have codimension >= 6"])


def classify_developable(inv: InvariantJet, tol=TOL_CLS, location=None) -> SingularityReport:
    """A-type of a developable-surface germ from the orders of tau0 and
    tau1: the frontal ladder (tau1 != 0) descends in the order of tau0,
    the wavefront ladder (tau0 != 0) in the order of tau1, and the
    tau0 = tau1 = 0 corner yields the T-types.

    The cA5 verdict is topological; cS1-, cC3- and the cuspidal S/B
    families are never emitted (they are not realized by developables),
    nor are the beaks/lips and purse/pyramid wavefront types.
    """
    if len(inv.tau0) < 4 or len(inv.tau1) < 4:
        raise InsufficientJetOrder("classify_developable needs tau jets to order >= 3")
    tree = _Tree(tol)
    o0 = vanishing_order(inv.tau0, tol)
    o1 = vanishing_order(inv.tau1, tol)
    t0s = max(1.0, float(np.max(np.abs(inv.tau0))))
    t1s = max(1.0, float(np.max(np.abs(inv.tau1))))

    if o1 == 0:
        tree.nonzero("tau1", inv.tau1[0], t1s)
        if o0 == 0:
            tree.nonzero("tau0", inv.tau0[0], t0s)
            return _report(tree, Label.CE, location)
        tree.is_zero("tau0", inv.tau0[0], t0s)
        if o0 == 1:
            tree.nonzero("tau0'", inv.tau0[1], t0s)
            return _report(tree, Label.CS0, location)
        tree.is_zero("tau0'", inv.tau0[1], t0s)
        if o0 == 2:
            tree.nonzero("tau0''", inv.tau0[2], t0s)
            return _report(tree, Label.CS1_PLUS, location)
        tree.is_zero("tau0''", inv.tau0[2], t0s)
        if o0 == 3:
            tree.nonzero("tau0'''", inv.tau0[3], t0s)
            return _report(tree, Label.CC3_PLUS, location)
        return _report(
            tree, Label.UNRESOLVED, location,
            caveats=["tau0 vanishes to order >= 4: the 5-jet reduces to (x, y^2, 0); "
                     "cuspidal S- and B-types are not realized by developables"],
        )

    tree.is_zero("tau1", inv.tau1[0], t1s)
    if o0 == 0:
        tree.nonzero("tau0", inv.tau0[0], t0s)
        if o1 == 1:
            tree.nonzero("tau1'", inv.tau1[1], t1s)
            return _report(tree, Label.SW, location)
        tree.is_zero("tau1'", inv.tau1[1], t1s)
        if o1 == 2:
            tree.nonzero("tau1''", inv.tau1[2], t1s)
            return _report(tree, Label.CA4, location)
        tree.is_zero("tau1''", inv.tau1[2], t1s)
        if o1 == 3:
            tree.nonzero("tau1'''", inv.tau1[3], t1s)
            return _report(tree, Label.CA5, location,
                           caveats=["verdict is topological: the germ is topologically "
                                    "A-equivalent to the cA5 normal form"])
        return _report(tree, Label.UNRESOLVED, location,
                       caveats=["tau1 vanishes to order >= 4 with tau0 != 0 (cone-like degeneration)"])

    tree.is_zero("tau0", inv.tau0[0], t0s)
    if o1 == 1:
        tree.nonzero("tau1'", inv.tau1[1], t1s)
        return _report(tree, Label.T1, location)
    tree.is_zero("tau1'", inv.tau1[1], t1s)
    return _report(tree, Label.T2, location)


def topological_type(inv: InvariantJet, tol=TOL_CLS) -> CurveType:
    """Type (m, m+1, m+1+r) of the striction-curve germ of a developable:
    m-1 and r-1 are the vanishing orders of tau1 and tau0.

    Determinativity follows Ishikawa's characterization: the type fixes
    the smooth A-class exactly for (1,2,2+r), (2,3,4), (3,4,5) and the
    topological A-class whenever l, r are not both even (always true
    here, l = 1).
    """
    if vanishing_order(inv.kappa1, tol) is not INFINITE:
        raise NotDevelopable("topological_type requires kappa1 = 0 identically")
    o1 = vanishing_order(inv.tau1, tol)
    o0 = vanishing_order(inv.tau0, tol)
    if o1 is INFINITE or o0 is INFINITE:
        raise OrderUndetectable(
            f"orders of tau1/tau0 not detectable within jet order {inv.order}"
        )
    m = int(o1) + 1
    r = int(o0) + 1
    return CurveType(m=m, l=1, r=r, determinativity=_determinativity(m, 1, r))


def _determinativity(m, l, r):
    smooth = (m == 1 and l == 1) or (m, l, r) in {(2, 1, 1), (1, 2, 1), (3, 1, 1), (1, 2, 2)}
    if smooth:
        return "Smooth"
    if not (l % 2 == 0 and r % 2 == 0) or m == 1:
        return "Topological"
    return "Neither"


def izumiya_saji_classify(fd: FrontalData, p, tol=TOL_CLS) -> Label:
    """Wavefront classification by iterated eta-derivatives of lambda at
    a non-degenerate corank-one singular point of a developable.

    The first nonvanishing entry of (eta lambda, eta^2 lambda,
    eta^3 lambda, eta^4 lambda) selects cE, Sw, cA4, cA5 in that order.
    """
    s0, t0 = p
    d = fd.surface.dF(s0, t0)
    sv = np.linalg.svd(d, compute_uv=False)
    if sv[0] < 1e-12:
        raise DegenerateSingularity("dF vanishes entirely; corank exceeds one")
    if sv[1] > 1e-6 * sv[0]:
        raise DegenerateSingularity(f"point ({s0},{t0}) is not singular (rank 2)")
    lam = fd.lambda_raw(s0, t0)
    if abs(lam) > 1e-6:
        raise DegenerateSingularity(f"lambda({s0},{t0}) = {lam} does not vanish")
    derivs = fd.eta_lambda_derivatives(s0, kmax=4)
    scale = max(1.0, float(np.max(np.abs(derivs))))
    ladder = [Label.CE, Label.SW, Label.CA4, Label.CA5]
    for k, label in enumerate(ladder):
        if abs(derivs[k]) > tol * scale:
            return label
    raise NoVerdict("eta-derivatives of lambda vanish to order 4")
