"""Shared exception types.

Every refusal carries enough context to name the violated cap or the
offending value; a non-integer period is a hard internal failure, never
a value to round.
"""


class SizeCapError(ValueError):
    """A computation was refused because it exceeds a documented size cap."""


class IntegrityError(AssertionError):
    """An exact identity that must hold failed (e.g. a period is not an integer)."""


class UnsupportedError(ValueError):
    """The requested family/rank/instance is outside the supported range."""
