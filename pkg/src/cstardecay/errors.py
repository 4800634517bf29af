"""Exception hierarchy shared by all modules."""


class DecayError(Exception):
    """Base class for every error raised by this package."""


class InvalidElementError(DecayError, ValueError):
    pass


class IncompatibleOperandsError(DecayError, TypeError):
    pass


class NumericFailureError(DecayError, ArithmeticError):
    pass


class ApproximationFailureError(DecayError, ArithmeticError):
    pass


class RegionViolationError(DecayError, ValueError):
    """The function is not analytic on the region a bound or expansion needs."""


class InvalidRadiusError(DecayError, ValueError):
    pass


class InvalidIntervalError(DecayError, ValueError):
    pass


class PreconditionViolationError(DecayError, ValueError):
    pass
