"""Exception and warning types raised by the opcalc kernel."""


class OpcalcError(Exception):
    """Base class for every kernel error."""


class NotAUnit(OpcalcError, ArithmeticError):
    """Power series has (numerically) zero constant term and cannot be inverted."""


class DivisionByZeroSeries(OpcalcError, ZeroDivisionError):
    pass


class ZeroPolynomial(OpcalcError, ValueError):
    pass


class OutOfDomain(OpcalcError, ValueError):
    """Evaluation point lies outside the function's interval."""


class IntervalMismatch(OpcalcError, ValueError):
    pass


class InvalidInterval(OpcalcError, ValueError):
    pass


class SingularSystem(OpcalcError, ArithmeticError):
    pass


class NotMaterializable(OpcalcError, ValueError):
    """Generalized function has no continuous representative at the tolerance."""


class DegreeZero(OpcalcError, ValueError):
    pass


class ZeroLeadingCoefficient(OpcalcError, ValueError):
    pass


class SchemaError(OpcalcError, ValueError):
    """Problem document failed validation; ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


class ExpressionError(OpcalcError, ValueError):
    pass


class NoConvergence(UserWarning):
    """Adaptive interpolation hit its degree cap; the result carries ``inexact``."""
