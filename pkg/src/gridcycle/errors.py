"""Exception hierarchy shared across the package."""


class GridCycleError(Exception):
    """Base class for all package errors."""


class UsageError(GridCycleError, ValueError):
    """A caller passed an out-of-range cell, a repeated query or a malformed argument."""


class ProtocolError(GridCycleError, RuntimeError):
    """An operation was invoked in a state that does not allow it."""


class GridParseError(UsageError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class BudgetExceededError(GridCycleError):
    """The requested enumeration is larger than the configured budget."""
