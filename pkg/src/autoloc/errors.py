"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an operation receives data violating its preconditions."""


class InternalError(RuntimeError):
    """Raised when an internal consistency guarantee fails (a bug, not bad input)."""
