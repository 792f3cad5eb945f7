"""Exception types shared across the package."""


class CyclineqError(Exception):
    """Base class for all domain errors raised by this package."""


class BadDimension(CyclineqError):
    """The number of variables is too small (n > 1 is required)."""


class NotABijection(CyclineqError):
    """A permutation map repeats or omits values of {1, ..., n}."""


class IndexOutOfRange(CyclineqError):
    """A 1-based index falls outside {1, ..., n}."""


class NotAdmissible(CyclineqError):
    """The exponent lies outside the admissible range for the permutation."""


class IrrationalExponent(NotAdmissible):
    """Certificate construction requires an exact rational exponent."""


class MatchingFailed(CyclineqError):
    """Internal error: a perfect matching that the marriage condition
    guarantees could not be found, so an upstream invariant is broken."""


class NotRefutable(CyclineqError):
    """No counterexample is produced for these parameters."""


class NonPositiveInput(CyclineqError):
    """All vector coordinates must be strictly positive and finite."""


class DimensionMismatch(CyclineqError):
    """Vector length does not match the instance dimension."""


class BudgetExceeded(CyclineqError):
    """The requested computation exceeds the configured size budget."""
