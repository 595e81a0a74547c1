"""Exception types raised across the package."""


class BoundRotError(Exception):
    """Base class for all errors raised by boundrot."""


class DivisionBySmallConstant(BoundRotError, ArithmeticError):
    """A series division, log or power hit a constant term below the threshold."""


class NonzeroInnerConstant(BoundRotError, ValueError):
    """Composition requires the inner series to vanish at the origin."""


class InvalidMeasure(BoundRotError, ValueError):
    pass


class InvalidParameter(BoundRotError, ValueError):
    pass


class NotCaratheodory(BoundRotError, ValueError):
    pass
