"""
Exception hierarchy shared by the kernel and the application layer
"""


class ConeGeometryError(Exception):
    """Base class for every error raised by jordan and conegeo"""


class InvalidInputError(ConeGeometryError, ValueError):
    """The caller supplied something outside an operation's domain"""


class AlgebraMismatchError(InvalidInputError):
    pass


class DomainError(InvalidInputError):
    """Functional calculus applied outside the function's domain"""


class NotInteriorError(InvalidInputError):
    pass


class NotProjectionError(InvalidInputError):
    pass


class LinearlyDependentError(InvalidInputError):
    pass


class UniqueGeodesicError(InvalidInputError):
    """Raised when a midpoint witness is requested for a unique geodesic"""


class RankError(InvalidInputError):
    pass


class NotInAffineHullError(InvalidInputError):
    pass


class NumericalFailure(ConeGeometryError, ArithmeticError):
    """A computation ran but its result failed a numerical acceptance test"""


class EigensolverError(NumericalFailure):
    pass


class ResidualError(NumericalFailure):
    pass


class NotAnIsometryError(NumericalFailure):
    pass


class NotJordanIsomorphismError(NumericalFailure):
    pass
