"""Exception hierarchy shared by every seqkit module."""

from __future__ import annotations


class SeqkitError(Exception):
    """Base class. ``pos`` is an optional (line, column) pair, 1-based."""

    exit_code = 2

    def __init__(self, message: str, pos: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.pos = pos

    def __str__(self) -> str:
        if self.pos is None:
            return self.message
        line, col = self.pos
        return f"{line}:{col}: {self.message}"

    def at(self, pos: tuple[int, int] | None) -> "SeqkitError":
        if self.pos is None:
            self.pos = pos
        return self


# sorting


class SortError(SeqkitError):
    pass


class UnsortedVariable(SortError):
    pass


class ArityMismatch(SortError):
    pass


class SortMismatch(SortError):
    def __init__(self, message, expected=None, actual=None, pos=None):
        super().__init__(message, pos)
        self.expected = expected
        self.actual = actual


# parsing


class ScriptSyntaxError(SeqkitError):
    def __init__(self, message, pos=None, expected=()):
        if expected:
            message = f"{message} (expected {', '.join(expected)})"
        super().__init__(message, pos)
        self.expected = tuple(expected)


class UnknownSymbol(SeqkitError):
    pass


# evaluation


class ProfileViolation(SeqkitError):
    pass


class MissingToken(SeqkitError):
    """Raised when evaluation reaches an unspecified value with no assignment."""

    def __init__(self, key):
        super().__init__(f"no value assigned to unspecified token {key}")
        self.key = key


class UnsupportedToken(SeqkitError):
    pass


# oracle / axioms / reduction


class WindowTooSmall(SeqkitError):
    pass


class UniverseTooLarge(SeqkitError):
    def __init__(self, count: int, ceiling: int):
        super().__init__(f"bounded universe has {count} models, ceiling is {ceiling}")
        self.count = count
        self.ceiling = ceiling


class UnknownSchema(SeqkitError):
    pass


class NotInFragment(SeqkitError):
    exit_code = 4

    def __init__(self, offenders):
        names = ", ".join(sorted(offenders))
        super().__init__(f"term is outside the reducible fragment: {names}")
        self.offenders = tuple(sorted(offenders))
