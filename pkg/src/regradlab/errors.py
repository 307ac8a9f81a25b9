"""Exception hierarchy shared across the package.

Every error raised by the library derives from RegradlabError so callers
(including the CLI) can distinguish library failures from programming bugs.
"""


class RegradlabError(Exception):
    """Base class for all library errors."""


class DomainError(RegradlabError):
    """An operand lies outside the declared domain of a map."""


class NoExtensionError(RegradlabError):
    """An extended inverse was requested but none is declared."""


class RangeError(RegradlabError):
    """A parametrization left its declared range."""


class JoinError(RegradlabError):
    """A half-interval map does not meet the continuity condition at the join."""


class MonotonicityError(RegradlabError):
    """A map required to be strictly increasing is not."""


class AdmissibilityError(RegradlabError):
    """A regraduation map failed its admissibility certificate."""


class NumericalError(RegradlabError):
    """A computed quantity left its mathematically guaranteed range."""


class ValidationError(RegradlabError):
    """A structured object (e.g. a POVM) failed validation."""


class FrechetError(RegradlabError):
    """A requested joint cell probability violates the Frechet bounds."""
