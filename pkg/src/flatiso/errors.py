"""Shared exception types."""


class CapabilityError(RuntimeError):
    """Raised when a request exceeds an explicit size or rank limit.

    Distinct from ValueError (malformed input): the input is legal but the
    exhaustive computation it asks for is outside the supported range.
    """
