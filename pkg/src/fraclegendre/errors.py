"""Exception hierarchy shared by all modules."""


class FracLegendreError(Exception):
    """Base class for every error raised by the package."""


class DomainError(FracLegendreError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterPole(DomainError):
    """A hypergeometric lower parameter hits a pole inside the summation range."""


class IntegerGap(DomainError):
    """The Gamma-ratio envelope degenerates because ``b - a`` is an integer."""


class BelowThreshold(DomainError):
    """A closed-form coefficient formula is not applicable for this degree."""


class BoundNotStated(DomainError):
    """No error bound is available for the requested parameters."""


class InsufficientRegularity(FracLegendreError):
    """A black-box function lacks the metadata an operation needs."""


class HypothesisViolated(FracLegendreError):
    """The input does not satisfy the regularity an identity relies on."""


class NumericalError(FracLegendreError, ArithmeticError):
    """A numerical procedure failed to reach its requested accuracy."""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not reach its tolerance.

    Attributes
    ----------
    value : float
        Best available estimate of the integral.
    error : float
        Estimated absolute error of ``value``.
    """

    def __init__(self, message, value=float("nan"), error=float("inf")):
        super().__init__(f"{message} (estimate {value:.6e}, achieved error {error:.3e})")
        self.value = value
        self.error = error
