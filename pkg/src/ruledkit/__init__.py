"""ruledkit: ruled and developable surfaces as curves of unit dual vectors.

A ruled surface F(s,t) = r(s) + t e(s) is encoded by the dual curve
v(s) = e(s) + eps * (r x e)(s); its dual curvature and dual torsion are
complete rigid-motion invariants, singular points sit where kappa1
vanishes, and the singularity type is read off the invariant jets.
"""

from .__about__ import __version__
from .classify import (
    CODIMENSION,
    CurveType,
    Label,
    ModuliCoefficients,
    SingularityReport,
    classify_developable,
    classify_ruled,
    izumiya_saji_classify,
    moduli_coefficients,
    topological_type,
    vanishing_order,
)
from .curves import (
    AnalyticCurve,
    ArclengthCurve,
    PolynomialDualCurve,
    RuledCurveJet,
    SampledCurve,
    TransformedCurve,
    arclength_reparam,
    cone,
    helicoid,
    helix_tangent_developable,
)
from .dual import (
    DualNumber,
    DualQuaternion,
    DualVector,
    Quaternion,
    UnitDualVector,
    dq_act,
    dual_cross,
    dual_dot,
    dual_mul,
    dual_sqrt,
    line_from_point_dir,
    lines_meet_perpendicular,
    point_on_line,
)
from .geometry import (
    CanonicalJet,
    DualFrame,
    DualInvariants,
    FrontalData,
    InvariantJet,
    StrictionCurve,
    SurfaceParameterization,
    canonical_frame_at,
    canonical_jet,
    frenet_at,
    frenet_residual,
    frontal_data,
    invariant_jet,
    invariant_jet_paths,
    is_developable,
    singular_locus,
    striction,
    surface,
)
from .reconstruct import (
    DeformationFamily,
    InvariantPrescription,
    ReconstructedCurve,
    TruncatedPolynomialCurve,
    gallery,
    gallery_prescription,
    integrate_frenet,
    tangent_developable_of_type,
    truncated_polynomial_surface,
    versal_family_S1,
)
from .specfile import SurfaceSpec

__all__ = [name for name in dir() if not name.startswith("_")]
