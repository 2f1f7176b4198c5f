"""Exception types shared across the package."""


class QuadgapError(Exception):
    """Base class for all package-specific errors."""


# quadratic forms

class NonSymmetricMatrix(QuadgapError):
    """The matrix of a quadratic form must equal its transpose exactly."""


class SingularForm(QuadgapError):
    """The form's matrix has zero determinant."""


class DimensionMismatch(QuadgapError):
    """Vector length does not match the form's dimension."""


# exponent calculus

class UnsupportedSignature(QuadgapError):
    """Signature outside the supported range (needs p >= q >= 1, p + q >= 3)."""


# gap search

class EmptyBall(QuadgapError):
    """Negative search radius: no integer vector is admissible."""


class SearchTooLarge(QuadgapError):
    """Exhaustive scan would exceed the hard node budget."""


class DegenerateSeries(QuadgapError):
    """Too few positive gaps to fit a decay exponent."""


class PrecisionLossWarning(UserWarning):
    """Form values exceed 2**52; low-order gap digits are unreliable."""


# integer orthogonal group / targets

class NonIntegerForm(QuadgapError):
    """Group enumeration needs a form with integer matrix entries."""


class SearchSpaceTooLarge(QuadgapError):
    """Entry bounds leave more than the allowed number of search nodes."""


class BorderlineComponent(QuadgapError):
    """Identity-component block determinant too close to zero to decide."""


class ChainViolation(QuadgapError):
    """A pulled-back solution failed its exact or metric checks (falsification)."""


class TargetRadiusNotFound(QuadgapError):
    """No radius up to the cap brings the form close to the target value."""


class EmptyTarget(QuadgapError):
    """Target set appears empty under the grid probe and local refinement."""


# Lie geometry

class ChamberViolation(QuadgapError):
    """Cartan coordinates outside the closed positive chamber."""


class NotInGroup(QuadgapError):
    """Matrix does not preserve the standard form to tolerance."""


class NotUnimodular(QuadgapError):
    """2x2 factor must have determinant 1."""


class UnsupportedRank(QuadgapError):
    """Quadrature and sampling are implemented for q <= 3 only."""


class RejectionStall(QuadgapError):
    """Rejection sampler acceptance rate collapsed; envelope misconfigured."""


class SingularMatrix(QuadgapError):
    """Matrix is numerically singular."""


# harness

class ConfigParseError(QuadgapError):
    """Configuration file is not valid JSON."""


class ValidationError(QuadgapError):
    """One or more configuration violations; all of them are listed."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class EmptySeries(QuadgapError):
    """A plot was requested for a series with fewer than two points."""


class OracleMismatch(QuadgapError):
    """Fast search and brute-force oracle disagree (falsification)."""
