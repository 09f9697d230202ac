"""Exception types shared across the package."""

from __future__ import annotations


class GhilbError(Exception):
    """Base class for all package errors."""


class GroupParseError(GhilbError, ValueError):
    """Malformed group spec string, or a trivial/out-of-range group."""


class NotGorensteinError(GhilbError, ValueError):
    """An operation that needs integral ages was given a non-SL group."""


class OrderLimitError(GhilbError, ValueError):
    """Group order exceeds the configured enumeration bound."""


class TieError(GhilbError, ValueError):
    """A weight vector lies on a wall: several monomials attain the minimum.

    Carries the tied monomials so callers can treat the tie as data.
    """

    def __init__(self, message: str, monomials):
        super().__init__(message)
        self.monomials = tuple(monomials)


class ConeError(GhilbError, ValueError):
    """A cluster's weight cone is not 3-dimensional simplicial."""


class ChartError(GhilbError, ValueError):
    """Chart equations cannot be produced (singular exponent matrix etc.)."""


class BoundaryWallError(GhilbError, ValueError):
    """Wall crossing was requested across a face on the orthant boundary."""


class FanVerificationError(GhilbError, RuntimeError):
    """Fan self-checks failed; .report lists which check and where."""

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report


class HexagonRelationError(GhilbError, ValueError):
    """No or multiple candidate f-characters; carries all candidates found."""

    def __init__(self, message: str, candidates):
        super().__init__(message)
        self.candidates = tuple(candidates)
