"""Exception types raised across the package."""


class BlockParError(Exception):
    """Base class for every error raised by blockpar."""


class EmptyInputError(BlockParError, ValueError):
    pass


class InvalidModeError(BlockParError, ValueError):
    """A mode violates the structural invariants of its type."""


class ModeSyntaxError(InvalidModeError):
    """A mode string could not be parsed.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class MismatchedSizeError(BlockParError, ValueError):
    pass


class PreconditionError(BlockParError, ValueError):
    pass


class ModesEquivalentError(PreconditionError):
    """A witness was requested for two modes that are equivalent."""


class InconsistencyError(BlockParError, RuntimeError):
    """Two independent computations disagreed. Always an implementation bug."""


class ConstructionError(InconsistencyError):
    """A witness construction failed to separate two modes."""


class RefusalError(BlockParError, ValueError):
    """Work was refused because it exceeds a configured resource guard."""


class StateSpaceTooLarge(RefusalError):
    pass
