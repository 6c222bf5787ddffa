"""Exception types shared across the package."""


class QuatnilError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(QuatnilError, ValueError):
    """An argument violates a basic parameter requirement (e.g. zero where nonzero needed)."""


class AlgebraMismatchError(ParameterError):
    """Two values from different quaternion algebras were combined."""


class NotDivisionAlgebraError(ParameterError):
    """The pair (a, b) defines a split algebra, not a division algebra."""


class DimensionMismatchError(ParameterError):
    """Matrix/vector shapes are incompatible for the requested operation."""


class PreconditionError(QuatnilError, ValueError):
    """A documented precondition of an operation does not hold."""


class ObstructionError(PreconditionError):
    """A witness was requested for a relation that provably does not hold."""


class ParseError(QuatnilError, ValueError):
    """Malformed serialized input."""


class SearchBudgetExceeded(QuatnilError, RuntimeError):
    """A bounded constructive search ran out of budget.

    Distinct from a negative decision: the existence question was answered
    yes (or is guaranteed), only the bounded construction failed to find a
    witness within the configured height/enumeration budget.
    """
