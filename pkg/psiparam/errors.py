"""This module defines the exceptions raised by psiparam.

Every exception which describes an invalid value
is also a ValueError, so callers which only care
about bad input can keep catching ValueError.
"""


class PsiParamError(Exception):
    """Base class of all errors raised by this package."""


class ValidationError(PsiParamError, ValueError):
    """A value violates an invariant of its type."""


class NormalizationError(ValidationError):
    """A norm or a total probability deviates from one."""


class DimensionError(ValidationError):
    """Shapes or dimensions of the operands don't match."""


class OutOfRangeError(ValidationError):
    """An index or a count is outside of its allowed range."""


class DegenerateConditionalError(ValidationError):
    """A conditional probability was requested
    for a conditioning event of probability zero.
    """


class ParseError(ValidationError):
    """The input document is malformed.

    Attributes:
        line (int or None): 1-based line of the error
        column (int or None): 1-based column of the error
        field (str or None): the offending field name
    """

    def __init__(self, message, line=None, column=None, field=None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if field is not None:
            location.append(f"field {field!r}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
        self.line = line
        self.column = column
        self.field = field


class ConsistencyError(PsiParamError):
    """Two computations which must agree don't."""


class UsageError(PsiParamError):
    """The command line options are invalid."""
