"""Numerical tolerances used across the library.

The defaults are deliberate: geometric predicates feed the singularity
classifier, so they must be robust to accumulated roundoff, while order
detection works on normalized jet coefficients.
"""

import os
from dataclasses import dataclass, replace

#: absolute tolerance for unit-ness checks (|v0| = 1, v0.v1 = 0, frames)
TOL_UNIT = 1e-9

#: base scale-relative tolerance for geometric predicates
TOL_GEO = 1e-9

#: below this director speed a curve is treated as cylindrical and refused
CYL_FLOOR = 1e-6

#: relative tolerance for agreement of the two invariant computation paths
JET_TOL = 1e-6

#: order-detection tolerance for the classifier (relative to jet scale)
TOL_CLS = 1e-7

#: dual-orthonormality defect allowed for reconstructed frames
ODE_TOL = 1e-10

#: default integration step for reconstruction
DEFAULT_STEP = 1e-3

#: default sup-norm threshold for "kappa1 vanishes identically"
TOL_DEVELOPABLE = 1e-7


def tol_geo(scale: float = 0.0) -> float:
    """Scale-relative geometric tolerance: TOL_GEO * (1 + |scale|)."""
    return TOL_GEO * (1.0 + abs(scale))


def jet_tol(value: float = 0.0) -> float:
    """Scale-relative cross-path tolerance: JET_TOL * (1 + |value|)."""
    return JET_TOL * (1.0 + abs(value))


@dataclass(frozen=True)
class Tolerances:
    """Bundle of tolerances carried by reports; CLI can override via
    --tol or the RULEDKIT_TOL environment variable."""

    unit: float = TOL_UNIT
    geo: float = TOL_GEO
    cyl_floor: float = CYL_FLOOR
    jet: float = JET_TOL
    cls: float = TOL_CLS
    ode: float = ODE_TOL
    developable: float = TOL_DEVELOPABLE

    def with_classification_tol(self, tol: float) -> "Tolerances":
        return replace(self, cls=tol, developable=tol)


def default_tolerances() -> Tolerances:
    """Default tolerances, honouring the RULEDKIT_TOL override."""
    env = os.environ.get("RULEDKIT_TOL")
    if env:
        return Tolerances().with_classification_tol(float(env))
    return Tolerances()
