"""Error types raised by the numeric routines."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of the operation."""


class ConvergenceError(RuntimeError):
    """A series ran out of its term budget before converging.

    Carries the partial sum and the number of terms consumed so callers
    can inspect how far the summation got.
    """

    def __init__(self, message: str, partial_sum: float | None = None,
                 terms: int | None = None):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.terms = terms


class BracketError(RuntimeError):
    """Root bracketing failed to isolate a sign change."""


class NumericsError(RuntimeError):
    """The computation cannot reach the requested accuracy in float64."""
