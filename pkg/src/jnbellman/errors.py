"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RangeError(DomainError):
    """A parameter lies outside its validity window; the message names the window."""


class ConvergenceError(RuntimeError):
    """An iterative solver failed to converge.

    Carries the last bracketing interval in ``bracket`` when available.
    """

    def __init__(self, message: str, bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.bracket = bracket


class DegenerateSecantError(DomainError):
    """The secant through the requested points is vertical or undefined."""


class BelowThresholdWarning(UserWarning):
    """The evaluated formula is only proven extremal for larger characteristic bounds."""
