"""Exception hierarchy shared by every layer of the package."""


class GraphShareError(ValueError):
    """Base class; subclasses ValueError so callers can catch either."""


class ParameterMismatchError(GraphShareError):
    pass


class MalformedDigitsError(GraphShareError):
    pass


class OutOfSpaceError(GraphShareError):
    """A value does not lie in the digit space of the declared (n, k)."""


class PaddingViolationError(GraphShareError):
    """A graph carries a nonzero edge bit past the declared payload length."""


class InsufficientSharesError(GraphShareError):
    pass


class ShareMismatchError(GraphShareError):
    """Shares disagree on scheme parameters or secret descriptor."""


class DuplicateShareError(GraphShareError):
    pass


class FormatError(GraphShareError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
