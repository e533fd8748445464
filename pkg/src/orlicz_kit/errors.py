"""Exception hierarchy.

Domain violations raise DomainError, structural size problems raise
DimensionMismatchError.  Quadrature that cannot certify a value within its
budget raises InconclusiveQuadratureError; this is deliberately distinct from
a computed value of +inf, which always comes from an analytic divergence
decision, never from a failed integration.
"""


class OrliczKitError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OrliczKitError, ValueError):
    """Input outside the mathematical domain of an operation."""


class DimensionMismatchError(OrliczKitError, ValueError):
    """Incompatible matrix or atom-list dimensions."""


class ConvergenceError(OrliczKitError, RuntimeError):
    """An iterative solver exhausted its budget without bracketing a root."""


class InconclusiveQuadratureError(OrliczKitError, RuntimeError):
    """Numerical integration could not certify a finite value or a divergence."""
