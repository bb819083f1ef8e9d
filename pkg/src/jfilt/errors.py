"""Shared exception types.

ValidationError covers malformed input: bad words, bad graphs, mismatched
alphabets or levels.  PreconditionError covers structurally valid input that
violates a documented precondition of an operation.  The command line driver
maps them to exit codes 2 and 3 respectively.
"""


class ValidationError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class NotOrientable(Exception):
    """Raised when a unitrivalent graph admits no source-free orientation."""
