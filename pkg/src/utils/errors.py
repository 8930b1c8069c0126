"""Exception hierarchy for eulerec.

Everything derives from ValueError so callers that only care about
"bad input" can keep catching that.
"""


class EulerecError(ValueError):
    """Base class for all library errors."""


class NonInvertibleSeriesError(EulerecError):
    """Constant term is not a unit of the integers."""


class NonIntegralCoefficientError(EulerecError):
    """A forward substitution produced a non-integer coefficient."""


class TableTooShortError(EulerecError):
    """A FunctionTable does not cover the requested index."""


class EnumerationGuardError(EulerecError):
    """An exhaustive oracle was asked for more than it is allowed to enumerate."""


class DomainError(EulerecError):
    """Argument outside the domain of a function or identity."""


class InexactDivisionError(EulerecError):
    """A recurrence step that must divide exactly did not."""


class UnknownKeyError(EulerecError):
    """Unknown sequence name or identity key."""


class MissingParameterError(EulerecError):
    """A parametric sequence or identity was used without its parameter."""
