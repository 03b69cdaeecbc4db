"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PreemptInboxError(Exception):
    """Base class for all package errors."""


class InvalidAddress(PreemptInboxError, ValueError):
    pass


class UnsupportedLevel(PreemptInboxError, ValueError):
    pass


class ParseFailure(PreemptInboxError, ValueError):
    """Malformed input; carries the 1-based line number and a reason."""

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class IoFailure(PreemptInboxError, OSError):
    pass


class DuplicateTaskId(PreemptInboxError, ValueError):
    pass


class PriorityOutOfRange(PreemptInboxError, ValueError):
    pass


class MixedOrigins(PreemptInboxError, ValueError):
    pass


class EmptyParts(PreemptInboxError, ValueError):
    pass


class DuplicateId(PreemptInboxError, ValueError):
    pass


class IndexOutOfRange(PreemptInboxError, IndexError):
    pass


class InvariantViolation(PreemptInboxError):
    pass


class RuntimeFailure(PreemptInboxError):
    """A module error raised while replaying a trace event."""

    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
