"""Exception hierarchy shared by every module."""


class AutflowError(Exception):
    """Base class for all math/ring errors raised by the package."""


class InvalidSpec(AutflowError, ValueError):
    pass


class ParseError(AutflowError, ValueError):
    pass


class NotAUnit(AutflowError, ArithmeticError):
    pass


class DivisionByZero(AutflowError, ZeroDivisionError):
    pass


class NotDivisible(AutflowError, ArithmeticError):
    pass


class Unsupported(AutflowError):
    pass


class NotEmbeddable(AutflowError):
    pass


class RingMismatch(AutflowError, TypeError):
    pass


class OrderExhausted(AutflowError):
    """A truncated series ran out of valid coefficients."""


class OrderExceeded(AutflowError):
    pass


class NonzeroConstantTerm(AutflowError, ValueError):
    pass


class BadRange(AutflowError, ValueError):
    pass


class EmptyInput(AutflowError, ValueError):
    pass


class ZeroLeadingTerm(AutflowError, ValueError):
    """The sequence lies in the null space (leading term 0) and has no preimage."""


class NotClosed(AutflowError):
    pass


class UnsupportedBasePoint(AutflowError):
    pass


class UnsupportedKind(AutflowError):
    pass
