"""Exception hierarchy shared by all modules."""


class GorensteinError(Exception):
    """Base class for every error raised by this package."""


class ParseError(GorensteinError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(ParseError):
    pass


class VariableMismatch(GorensteinError):
    pass


class DimensionMismatch(GorensteinError):
    pass


class InfiniteDimensional(GorensteinError):
    pass


class ImproperIdeal(GorensteinError):
    pass


class SingularBasis(GorensteinError):
    pass


class NotLocal(GorensteinError):
    pass


class NotHomogeneous(GorensteinError):
    def __init__(self, message, generator=None):
        self.generator = generator
        super().__init__(message)


class NotGorenstein(GorensteinError):
    pass


class ElementNotInMaxIdeal(GorensteinError):
    pass


class UnitPartNotOne(GorensteinError):
    pass


class DegreeOutOfRange(GorensteinError):
    pass


class DegenerateQuadraticForm(GorensteinError):
    pass


class NotAComplement(GorensteinError):
    pass


class NotInsideKernel(NotAComplement):
    pass


class ZeroPolynomial(GorensteinError):
    pass


class FingerprintMismatch(GorensteinError):
    def __init__(self, message, differences=None):
        self.differences = differences or {}
        super().__init__(message)


class SingularC(GorensteinError):
    pass


class BudgetExceeded(GorensteinError):
    """A bounded computation ran out of its allotted work."""
