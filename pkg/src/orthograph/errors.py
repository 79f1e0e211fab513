"""Exception types shared across the package.

All errors derive from :class:`OrthographError` so callers can catch the
package's failures without swallowing built-in exceptions.
"""


class OrthographError(Exception):
    """Base class for all errors raised by this package."""


class ShapeMismatch(OrthographError):
    """Raised when two operands live in algebras of different shapes."""


class ZeroElement(OrthographError):
    """Raised when an operation requires a nonzero element."""


class NotPositive(OrthographError):
    """Raised when an element fails a positive-semidefiniteness check."""


class NotNormalized(OrthographError):
    """Raised when an element that must have norm one does not."""


class NotMinimal(OrthographError):
    """Raised when a projection of total rank one is required."""


class PositionOutOfRange(OrthographError):
    """Raised when a block position does not exist in the target shape."""


class InfeasibleRank(OrthographError):
    """Raised when a requested rank profile cannot be realized."""


class SmallAlgebra(OrthographError):
    """Raised for the three excluded shapes [1], [1, 1] and [2], where the
    non-invertible elements do not form a single connected component."""


class Isolated(OrthographError):
    """Raised when a witness is requested for a right-invertible element."""


class RightInvertibleEndpoint(OrthographError):
    """Raised when a path endpoint is right invertible (hence isolated)."""


class VerificationFailed(OrthographError):
    """Raised when a constructed certificate or path fails re-verification."""


class SplitInfeasible(OrthographError):
    """Raised when a direct-sum split point is not usable for the shape."""


class ParseError(OrthographError):
    """Raised when a serialized element or graph cannot be decoded."""


class ConfigError(OrthographError):
    """Raised for invalid run configuration."""
