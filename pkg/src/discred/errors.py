"""Exception hierarchy shared across the library.

The CLI maps these onto exit codes, so new failure modes should reuse one
of the three classes below rather than invent a fresh exception type.
"""


class DiscredError(Exception):
    """Base class for all library errors."""


class ValidationError(DiscredError):
    """Input data violates a structural requirement (bad root datum,
    non-homomorphism, malformed problem file, ...)."""


class BudgetExceededError(DiscredError):
    """An enumeration cap or size budget was hit before completion."""


class InternalCheckError(DiscredError):
    """A property that is a theorem failed to hold.  Always a bug."""
