"""Exception hierarchy shared by all modules."""


class LegDoublesError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LegDoublesError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvalidDiagonalError(DomainError):
    """A diagonal is not part of the triangulation it was applied to."""


class ResourceError(LegDoublesError, RuntimeError):
    """A configured size or search cap was exceeded; the result is inconclusive."""


class StructuralError(LegDoublesError, ValueError):
    """A combinatorial map or graph violates its structural invariants."""


class ConsistencyError(LegDoublesError, AssertionError):
    """An identity that must hold failed; this indicates a bug."""
