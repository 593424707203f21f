"""Exception types shared across the package."""


class NeedsExtension(ArithmeticError):
    """The requested object exists only over a field extension.

    Raised when a square root, isotropic vector or linear factor is not
    available in the active field. ``reason`` is a short machine-readable tag.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class PreconditionError(ValueError):
    """An operation was called on input outside its domain."""
