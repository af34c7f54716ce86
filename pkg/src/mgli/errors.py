"""Exception types raised across the package."""


class MGLIError(Exception):
    """Base class for all domain errors."""


class InvalidArgumentError(MGLIError, ValueError):
    pass


class DegenerateGeometryError(InvalidArgumentError):
    """Zero-length edges, coincident vertices or collapsed projections."""


class SingularConfigurationError(MGLIError):
    """Two edges or segments intersect, so the linking integrand blows up."""


class ConvergenceError(MGLIError):
    """Adaptive quadrature ran out of its refinement budget.

    Attributes
    ----------
    estimate : float
        Last integral estimate.
    error : float
        Estimated absolute error of ``estimate``.
    """

    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NotFoundError(MGLIError, LookupError):
    pass


class PDBParseError(MGLIError, ValueError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UndefinedCorrelationError(MGLIError, ArithmeticError):
    """Pearson correlation requested for a constant vector.

    When raised from a fit, ``report`` holds the otherwise complete
    :class:`~mgli.flexibility.FitReport` (with ``pearson_r`` set to NaN).
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
