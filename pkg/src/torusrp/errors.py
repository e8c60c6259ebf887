class InvalidInputError(ValueError):
    """Raised when an operation's precondition on its inputs is violated."""


class NumericalFailure(RuntimeError):
    """Raised when a numerical routine cannot produce a trustworthy answer."""
