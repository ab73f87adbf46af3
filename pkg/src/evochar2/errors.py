"""Exception hierarchy shared by every module of the package."""


class EvoError(Exception):
    """Base class for all errors raised by evochar2."""


class InvalidInput(EvoError, ValueError):
    pass


class RejectedModulus(InvalidInput):
    pass


class DivisionByZero(EvoError, ZeroDivisionError):
    pass


class MonomialInput(InvalidInput):
    pass


class IncompatibleField(EvoError):
    """A field F_{2^p} cannot host the requested polynomial identity."""


# Both names appear in the public API; they are the same condition.
FieldIncompatible = IncompatibleField


class DimensionMismatch(EvoError, ValueError):
    pass


class FieldMismatch(EvoError, ValueError):
    pass


class ParseError(EvoError, ValueError):
    def __init__(self, message, *, location=None):
        self.location = location
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)


class InvariantViolation(EvoError, ValueError):
    def __init__(self, message, *, witness=None):
        self.witness = witness
        super().__init__(message)


class NotPeriodic(EvoError):
    pass


class NotNilpotent(EvoError):
    pass


class ShapeError(InvalidInput):
    pass


class UnexpectedFactorShape(EvoError):
    """Invariant factors of the periodic summand do not fit (X^q+1)^(2^t)."""

    def __init__(self, message, *, report=None):
        self.report = report
        super().__init__(message)


class NotAMorphism(InvariantViolation):
    pass


class ZeroWeight(InvariantViolation):
    pass


class KernelNotNilplenary(EvoError):
    pass


class NotEvolutionAlgebra(EvoError, ValueError):
    pass


class SizeTooSmall(InvalidInput):
    pass
