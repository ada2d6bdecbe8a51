"""Exception hierarchy shared by every module of the package."""


class TowerSeriesError(Exception):
    """Base class for all computation errors raised by this package."""


class NonProductiveDefinition(TowerSeriesError):
    """A lazy cell was demanded while it was still being computed."""


class ZeroDenominator(TowerSeriesError, ZeroDivisionError):
    pass


class SingularDivision(TowerSeriesError, ZeroDivisionError):
    """Division by a tower or series whose leading term is an exact zero."""


class FieldMismatch(TowerSeriesError):
    """A transcendental function was applied where the coefficient field cannot represent it."""


class Unbounded(TowerSeriesError):
    pass


class BadHead(TowerSeriesError):
    pass


class NonzeroInnerConstant(TowerSeriesError):
    pass


class BadLinearTerm(TowerSeriesError):
    pass


class NegativeOrder(TowerSeriesError, ValueError):
    pass
