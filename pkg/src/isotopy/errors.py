"""Exception types raised across the package."""


class IsotopyError(Exception):
    pass


class NotInvertible(IsotopyError, ArithmeticError):
    """Raised when an element, matrix or octonion has no inverse.

    ``value`` carries the offending scalar (a determinant or a norm) when
    there is one.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class NoSolution(IsotopyError):
    pass


class UnsupportedRing(IsotopyError):
    pass


class NonUnitParameter(IsotopyError, ValueError):
    pass


class NotUnitNorm(IsotopyError, ValueError):
    pass


class AlgebraMismatch(IsotopyError, TypeError):
    pass


class PreconditionFailed(IsotopyError):
    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


class NotRelated(IsotopyError):
    pass


class NotSpin(IsotopyError):
    pass


class NotIsomorphism(IsotopyError):
    pass


class NotFound(IsotopyError):
    pass


class NotReached(IsotopyError):
    pass


class UnsupportedFieldSize(IsotopyError, ValueError):
    pass


class ParseError(IsotopyError, ValueError):
    pass
