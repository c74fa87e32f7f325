"""Exception types shared across the package."""


class InstanceFormatError(ValueError):
    """Raised when an input document cannot be turned into an instance."""


class BoundExceeded(RuntimeError):
    """Raised when an exhaustive procedure would exceed its configured size bound."""

    def __init__(self, what: str, size: int, bound: int):
        super().__init__(f"{what}: size {size} exceeds bound {bound}")
        self.what = what
        self.size = size
        self.bound = bound
