"""Exception types shared across the package."""


class LmcError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(LmcError):
    """Polynomial operands disagree on variable count or degree cap."""


class ContextMismatch(LmcError):
    """Operands live over different (m, c) contexts."""


class DomainError(LmcError):
    """Input is outside the mathematical domain of the operation."""


class ValidationError(LmcError):
    """Structured input violates a required invariant."""


class UsageError(LmcError):
    """Inapplicable request, e.g. a law run on a context it does not cover."""


class ParseError(LmcError):
    """Syntax error with a source position.

    `line` and `column` are 1-based and point at the first offending token.
    """

    def __init__(self, line, column, expected, found):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"{line}:{column}: expected {expected}, found {found}")
