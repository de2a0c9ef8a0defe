"""Shared exception types.

The distinction matters for the CLI exit codes: usage and input problems
exit 2, verification failures exit 1.
"""


class PreconditionViolation(ValueError):
    """A documented hypothesis of an operation does not hold for the input."""


class InvalidInput(ValueError):
    """Structurally invalid input (broken invariant of a domain type)."""


class PrecisionExhausted(RuntimeError):
    """A truncated computation cannot certify its answer at the working
    precision; the caller should retry with more digits."""


class ResourceLimit(RuntimeError):
    """Input size exceeds the documented desk-scale cap."""


class UnsupportedRegime(RuntimeError):
    """Parameters outside the regime where the answer is guaranteed."""
