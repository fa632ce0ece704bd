"""Exception types shared across the package."""

from __future__ import annotations


class CodingError(ValueError):
    """A precondition or validation failure on user-supplied input."""


class FieldMismatch(CodingError):
    """Two operands live over different finite fields."""


class GuardExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what: str, needed: int, guard: int):
        super().__init__(f"{what}: needs {needed} > guard {guard}")
        self.what = what
        self.needed = needed
        self.guard = guard


class CertificationError(RuntimeError):
    """A construction failed a property that it is guaranteed to have.

    Raised when re-verification of a guaranteed property fails, which
    indicates a bug rather than bad input.
    """
