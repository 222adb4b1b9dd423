"""Exception types shared across the package."""


class OstrowskiError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OstrowskiError, ValueError):
    """An argument lies outside the domain of a function or operation."""


class NonFiniteValue(OstrowskiError, ArithmeticError):
    """A computation produced an infinite or NaN value."""


class ParamError(OstrowskiError, ValueError):
    """A parameter (s, p, q, M, grid size, ...) is invalid."""


class MaxDepthExceeded(OstrowskiError, RuntimeError):
    """Adaptive quadrature hit its recursion limit.

    The best available estimate is kept on the exception so callers can still
    use it.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
