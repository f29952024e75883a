"""Exception hierarchy shared by every paradelta module."""


class ParadeltaError(Exception):
    """Base class for all library errors."""


class VariableMismatch(ParadeltaError, ValueError):
    pass


class NotDivisible(ParadeltaError, ArithmeticError):
    pass


class NonIntegralInterpolant(ParadeltaError, ArithmeticError):
    pass


class InconsistentResidues(ParadeltaError, ValueError):
    pass


class DegreeBoundViolated(ParadeltaError, ArithmeticError):
    """A probe disagreed with the interpolated resultant; raise the degree bounds."""


class NotAPerfectPower(ParadeltaError, ArithmeticError):
    pass


class NotIn4cRing(ParadeltaError, ArithmeticError):
    pass


class UnsupportedPeriod(ParadeltaError, ValueError):
    pass


class PInvalidDividesK(ParadeltaError, ValueError):
    pass


class ConvergenceFailure(ParadeltaError, ArithmeticError):
    pass


class PathTooCoarse(ParadeltaError, ArithmeticError):
    pass


class RootOnPath(ParadeltaError, ArithmeticError):
    pass


class CacheCorrupted(ParadeltaError):
    pass
