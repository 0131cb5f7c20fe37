"""Exception hierarchy shared across the package.

Two broad families: :class:`DataError` for malformed or insufficient input
data (CLI exit code 3) and :class:`DomainError` for parameter values outside
their mathematical domain (CLI exit code 4).
"""

from __future__ import annotations


class MfracError(Exception):
    """Base class for all package errors."""


class DomainError(MfracError, ValueError):
    """A parameter is outside its mathematical domain (e.g. H not in (0,1))."""


class DataError(MfracError, ValueError):
    """Input data is malformed or unusable."""


class InsufficientDataError(DataError):
    """A series is too short for the requested estimation."""


class GridMismatchError(DataError):
    """Realizations do not share a common time grid."""


class ExprError(MfracError, ValueError):
    """Base class for expression parsing/evaluation errors."""


class ExprSyntaxError(ExprError):
    """Malformed expression source.

    ``offset`` is the byte offset into the source where parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownNameError(ExprSyntaxError):
    """Identifier or function name not part of the expression language."""

    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown name {name!r}", offset)
        self.name = name


class ExprEvalError(ExprError):
    """Expression evaluated to a non-finite value."""


class HurstClampWarning(UserWarning):
    """A Hurst value grazed the boundary of (0,1) and was clamped."""


class DegenerateSegmentWarning(UserWarning):
    """A quadratic-variation segment was degenerate (zero variation or empty)."""
