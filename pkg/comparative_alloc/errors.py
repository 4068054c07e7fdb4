from typing import Optional

from comparative_alloc.utils.misc import ExitStatus


class AllocError(Exception):
    exit_status = ExitStatus.INVARIANT_VIOLATION


class ValidationError(AllocError):
    exit_status = ExitStatus.VALIDATION_FAILURE

    def __init__(self, msg: str, line: Optional[int] = None):
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
        self.line = line


class TraceFormatError(ValidationError):
    """Malformed channel trace. `line` is 1-based and counts the header and comment lines."""


class MalformedTraceRowError(TraceFormatError):
    """Header, column count or a field value that cannot be parsed."""


class InconsistentTraceLengthError(TraceFormatError):
    """Users with different subcarrier counts, gaps in the indices or a count that does not match the grid."""


class DuplicateTraceEntryError(TraceFormatError):
    pass


class DegenerateChannelError(AllocError):
    exit_status = ExitStatus.DEGENERATE_INPUT


class GuardRefusalError(AllocError):
    exit_status = ExitStatus.GUARD_REFUSAL


class InvariantViolation(AllocError):
    exit_status = ExitStatus.INVARIANT_VIOLATION
