"""Exception hierarchy.

Every error raised by the library derives from RuledKitError so callers can
catch the whole family; the CLI maps them onto exit codes.
"""


class RuledKitError(Exception):
    """Base class for all ruledkit errors."""


class NonPositiveReal(RuledKitError):
    """Square root of a dual number requires a positive real part."""


class NotUnit(RuledKitError):
    """A unit dual vector / unit dual quaternion constraint is violated."""


class ZeroDirection(RuledKitError):
    """A line direction vector is (numerically) zero."""


class CylindricalPoint(RuledKitError):
    """|v0'(s)| fell below the cylindrical floor; the frame is undefined."""


class OrderUnavailable(RuledKitError):
    """A derivative order beyond the curve's jet contract was requested."""


class NotDevelopable(RuledKitError):
    """Operation requires kappa1 to vanish identically."""


class DegenerateDirector(RuledKitError):
    """e x e' vanishes; no frontal normal can be defined."""


class NotSingular(RuledKitError):
    """Canonical jet requested at a point where the map is immersive."""


class InsufficientJetOrder(RuledKitError):
    """The classifier needs derivatives the supplied jet does not carry."""


class OrderUndetectable(RuledKitError):
    """A vanishing order could not be determined within the available jet."""


class DegenerateSingularity(RuledKitError):
    """The singular point is not of the non-degenerate corank-one kind."""


class NoVerdict(RuledKitError):
    """All tested eta-derivatives of lambda vanish within tolerance."""


class InvalidInitialFrame(RuledKitError):
    """Initial frame for reconstruction is not dual-orthonormal."""


class NonPositiveKappa0(RuledKitError):
    """kappa0 must stay positive on the integration grid."""


class NotOnStratum(RuledKitError):
    """Deformation base point does not satisfy the stratum conditions."""


class UnsupportedLabel(RuledKitError):
    """No gallery prescription exists for the requested label."""


class InvariantMismatch(RuledKitError):
    """The two independent invariant computation paths disagree."""


class SpecError(RuledKitError):
    """Surface spec parse error, carrying line/column diagnostics."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
