"""Exception hierarchy shared by all modules."""


class FuzzyHomLieError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(FuzzyHomLieError, ValueError):
    pass


class DimensionMismatch(FuzzyHomLieError, ValueError):
    pass


class DivisionByZero(FuzzyHomLieError, ZeroDivisionError):
    pass


class UnsupportedField(FuzzyHomLieError, ValueError):
    """Raised when an enumeration is requested over the rationals."""


class CapExceeded(FuzzyHomLieError, RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


class EmptyList(FuzzyHomLieError, ValueError):
    pass


class NotCertified(FuzzyHomLieError, ValueError):
    pass


class NotSubspaceLeveled(FuzzyHomLieError, ValueError):
    """A pointwise table has a level cut that is not a linear subspace."""


class InvariantViolation(FuzzyHomLieError, ValueError):
    pass


class InvalidParams(FuzzyHomLieError, ValueError):
    pass


class RetriesExhausted(FuzzyHomLieError, RuntimeError):
    pass


class ParseError(FuzzyHomLieError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
