"""Exception hierarchy shared by all modules."""


class FiniteOPError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(FiniteOPError, ValueError):
    pass


class DenominatorZero(FiniteOPError, ZeroDivisionError):
    """A lower-parameter Pochhammer vanishes inside the summation range."""


class GammaPole(FiniteOPError, ValueError):
    """A Gamma argument of a transformation prefactor is a non-positive integer."""


class DuplicatePoint(FiniteOPError, ValueError):
    pass


class NonPositiveWeight(FiniteOPError, ValueError):
    pass


class IndexOutOfRange(FiniteOPError, IndexError):
    pass


class BudgetExceeded(FiniteOPError, RuntimeError):
    """Subset enumeration would exceed the configured budget."""


class IrrationalSqrt(FiniteOPError, ValueError):
    """The rational backend was asked for the square root of a non-square."""
