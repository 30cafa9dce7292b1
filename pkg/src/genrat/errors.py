"""Exception hierarchy shared by every module of the package."""


class GenratError(Exception):
    """Base class for all errors raised by genrat."""


class ParseError(GenratError):
    """Malformed polynomial or field text."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnsupportedError(GenratError):
    """Input is outside the supported range (e.g. number-field degree bound)."""


class BudgetExceeded(GenratError):
    """A configured work budget was exhausted before the computation finished."""


class PreconditionError(GenratError):
    """An operation was called on input violating its precondition."""


class ReducibleInputError(PreconditionError):
    """An operation needing an (absolutely) irreducible curve got a reducible one."""


class InternalInconsistency(GenratError):
    """Two independent computations disagreed; signals a bug, never user error."""
