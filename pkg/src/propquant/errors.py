class PropError(Exception):
    """Base error for the package."""


class ArityError(PropError):
    pass


class CycleError(PropError):
    pass


class TruncationExceeded(PropError):
    """Raised when a computation needs data beyond the configured truncation."""


class ParseError(PropError):
    pass


class TruncationMismatch(PropError):
    pass
