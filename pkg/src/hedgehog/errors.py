"""Exception hierarchy shared by all hedgehog modules."""


class HedgehogError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HedgehogError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation attempted too close to a pole."""


class BranchCutError(DomainError):
    """Evaluation attempted on a branch cut."""


class AccuracyLossError(HedgehogError):
    """Internal error estimate of a special-function evaluation exceeded
    the advertised bound."""


class NonUnitaryError(HedgehogError):
    """A coupling matrix failed the unitarity check.

    Carries the offending max-norm deviation in ``deviation``.
    """

    def __init__(self, message, deviation=None):
        super().__init__(message)
        self.deviation = deviation


class SingularMomentumError(HedgehogError):
    """The lead-block denominator of the effective coupling is singular
    at the requested momentum."""


class DecoupledError(HedgehogError):
    """Effective coupling equals 1: the leads are detached and the
    resonance function is undefined."""


class SingularSystemError(HedgehogError):
    """The scattering linear system is singular (S-matrix pole or an
    eigenvalue of the interior operator)."""


class OnContourSingularityError(HedgehogError):
    """A zero or pole of the integrand sits on (or too close to) the
    sampling contour; refinement reached maximum depth."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class UnresolvedCellError(HedgehogError):
    """Subdivision cells with nonzero winding count remained unresolved.

    ``roots`` holds the roots that were found, ``cells`` the offending
    cells, so callers never lose partial results silently.
    """

    def __init__(self, message, roots=None, cells=None):
        super().__init__(message)
        self.roots = roots or []
        self.cells = cells or []


class NotSupportedError(HedgehogError):
    """Operation requires data the selected backend cannot provide
    (e.g. off-diagonal Green values on a built-in geometry)."""


class ConfigError(HedgehogError):
    """Invalid run configuration."""
