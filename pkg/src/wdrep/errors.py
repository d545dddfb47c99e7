"""Exception hierarchy shared by every module."""


class WDError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(WDError):
    pass


class SingularMatrix(WDError):
    pass


class NotUnipotent(WDError):
    pass


class NotNilpotent(WDError):
    pass


class NonSplitSpectrum(WDError):
    """A characteristic polynomial does not split over the working field."""


class NotInGroup(WDError):
    pass


class NotURFS(WDError):
    pass


class ZeroScale(WDError):
    pass


class DegreeBudgetExceeded(WDError):
    pass


class BudgetExhausted(WDError):
    pass


class InvalidModule(WDError):
    pass


class NotFound(WDError):
    pass


class FieldError(WDError):
    """Bad number field data: reducible minimal polynomial, bad embedding box, mixed fields."""
