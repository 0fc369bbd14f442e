"""Exception types shared across bellfield."""


class BellfieldError(Exception):
    """Base class for all package errors."""


class ZeroVarianceError(BellfieldError, ArithmeticError):
    """A correlation was requested for a variable with zero variance."""


class HiddenPhaseError(BellfieldError, ValueError):
    """The operation needs a uniformly distributed hidden phase."""


class IntegrationGridError(BellfieldError, ValueError):
    """Quadrature grid too coarse for the requested accuracy."""


class NonSymmetricError(BellfieldError, ValueError):
    """Matrix is not symmetric within tolerance."""


class InvalidTargetsError(BellfieldError, ValueError):
    """Malformed moment targets handed to the discrete joint-existence LP."""


class DegenerateIntensitiesError(BellfieldError, ArithmeticError):
    """Both detectors of a homodyne pair receive zero intensity."""


class ParseError(BellfieldError, ValueError):
    """Input text (config, table, matrix) could not be parsed."""


class ValidationError(BellfieldError, ValueError):
    """Input parsed but holds out-of-range or unknown values."""
