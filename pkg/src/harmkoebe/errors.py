"""Exception hierarchy shared by every module of the package."""


class KoebeError(Exception):
    """Base class for all errors raised by :mod:`harmkoebe`."""


class DivisionByNonUnit(KoebeError, ZeroDivisionError):
    """Series division by a series whose constant term vanishes."""


class BadConstantTerm(KoebeError, ValueError):
    """A series operation got a constant term it cannot accept."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class BadRadius(KoebeError, ValueError):
    pass


class BadParameter(KoebeError, ValueError):
    pass


class PointOutsideDisk(KoebeError, ValueError):
    pass


class DilatationOutOfRange(KoebeError, ValueError):
    pass


class IntegrationFailure(KoebeError, RuntimeError):
    pass


class DegenerateDerivative(KoebeError, ZeroDivisionError):
    pass


class DegenerateNormalizer(KoebeError, ZeroDivisionError):
    pass


class ParseError(KoebeError, ValueError):
    """Malformed map-spec string; ``position`` is the 0-based offset of the bad token."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RangeError(KoebeError, ValueError):
    pass


class UnknownSuite(KoebeError, KeyError):
    pass
