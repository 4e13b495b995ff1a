"""Exception types shared across the library."""


class PowermixError(Exception):
    """Base class for all library errors."""


class DomainError(PowermixError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DivergenceError(PowermixError, ArithmeticError):
    """A requested integral does not converge (e.g. singular double transform)."""


class MomentError(DomainError):
    """A moment was requested from a distribution that does not have it."""


class ParseError(PowermixError, ValueError):
    """Spec-grammar parse failure; carries position and expectation info."""

    def __init__(self, message: str, position: int, expected: str | None = None):
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
