"""Exception hierarchy shared by every module in the package."""


class KrasnerError(Exception):
    """Base class for all errors raised by krasnerkit."""


class DescriptorMismatch(KrasnerError, TypeError):
    pass


class DivisionByZero(KrasnerError, ZeroDivisionError):
    pass


class PrecisionExhausted(KrasnerError, ArithmeticError):
    """A p-adic quantity has no significant digits left."""


class UnsupportedCharacteristic(KrasnerError, ValueError):
    pass


class UnsupportedField(KrasnerError, ValueError):
    pass


class UnsupportedDegree(KrasnerError, ValueError):
    pass


class ZeroInput(KrasnerError, ValueError):
    pass


class HenselHypothesisFailed(KrasnerError, ValueError):
    pass


class InfiniteField(KrasnerError, ValueError):
    pass


class ConstantInput(KrasnerError, ValueError):
    pass


class IndexOutOfRange(KrasnerError, ValueError):
    pass


class DimensionMismatch(KrasnerError, ValueError):
    pass


class DimensionTooLarge(KrasnerError, ValueError):
    pass


class DegreeTooSmall(KrasnerError, ValueError):
    pass


class DegreeTooLarge(KrasnerError, ValueError):
    pass


class DegreeMismatch(KrasnerError, ValueError):
    pass


class DegenerateDegree(KrasnerError, ValueError):
    pass


class NotInU(KrasnerError, ValueError):
    """The monic polynomial is not separable and irreducible."""


class BudgetExceeded(KrasnerError, RuntimeError):
    pass


class Inconclusive(KrasnerError, RuntimeError):
    """A semi-decision procedure could neither confirm nor refute."""


class ZeroScale(KrasnerError, ValueError):
    pass


class WitnessMissing(KrasnerError, ValueError):
    pass


class NegativeInput(KrasnerError, ValueError):
    pass
