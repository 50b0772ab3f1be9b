"""
Exception hierarchy for the correlation toolkit.
Each error carries the exit code the command line reports for it.
"""


class CorrPopError(ValueError):
    """Base class for all domain errors."""

    exit_code = 3


class InvalidWordError(CorrPopError):
    """A word has letters outside its alphabet or an unparseable text form."""


class AlphabetError(CorrPopError):
    """Alphabet size below 2, or two words over different alphabets."""


class LengthMismatchError(CorrPopError):
    """Two words (or a word and a correlation) differ in length."""


class InvalidCorrelationError(CorrPopError):
    """A bit vector that is not a member of the required set (Δn or Γn)."""


class PrecisionError(CorrPopError):
    """Requested precision budget is too small for the asymptotic estimate."""


class UnknownMethodError(CorrPopError):
    """Population method name not recognised."""

    exit_code = 2


class BudgetExceededError(CorrPopError):
    """Exhaustive enumeration would exceed the configured budget."""

    exit_code = 4


class CapExceededError(BudgetExceededError):
    """Set enumeration requested beyond the length cap."""


class RangeError(CorrPopError):
    """Border-length range outside [0, n-1] or with i > k."""
