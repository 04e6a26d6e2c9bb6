"""Exception types shared by all modules, mapped to CLI exit codes."""


class ParseError(ValueError):
    """Malformed input text. Carries the byte offset of the first bad byte."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class CapacityError(RuntimeError):
    """Input exceeds a size budget (vertex cap, exhaustive-search cap, ...)."""


class ContractViolation(ValueError):
    """A caller broke a documented precondition."""


class VerificationError(RuntimeError):
    """A check that must hold mathematically failed; indicates a bug."""
