"""Exception hierarchy.

Every domain error derives from :class:`TreedexError` so the CLI can map it
to exit code 1 with a one-line reason.
"""

from __future__ import annotations


class TreedexError(ValueError):
    """Base class for all domain errors."""

    @property
    def reason(self) -> str:
        return f"{type(self).__name__}: {self}"


class NotATree(TreedexError):
    pass


class BadLabel(TreedexError):
    pass


class BadOrder(TreedexError):
    pass


class ParseError(TreedexError):
    pass


class Infeasible(TreedexError):
    pass


class NotRealizable(TreedexError):
    pass


class DegenerateParams(TreedexError):
    pass


class IncomparableLength(TreedexError):
    pass


class DomainError(TreedexError):
    pass


class CapExceeded(TreedexError):
    """Raised when an enumeration would exceed its configured cap.

    For streams, results yielded before the exception are still valid.
    """
