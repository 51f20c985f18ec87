"""Exception hierarchy shared by every module of the package."""


class BiratError(Exception):
    """Base class for all library errors."""


class FieldMismatch(BiratError):
    pass


class DivisionByZero(BiratError, ZeroDivisionError):
    pass


class ContextMismatch(BiratError):
    pass


class UnknownVariable(BiratError):
    pass


class PolySyntaxError(BiratError, ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotBihomogeneous(BiratError):
    pass


class ResourceLimit(BiratError):
    """A configured work budget (S-pairs, reduction steps) was exhausted."""


class UnitIdeal(BiratError):
    pass


class NotMinimal(BiratError):
    pass


class NoReductionFound(BiratError):
    pass


class EmptyLinearPart(BiratError):
    """The Rees ideal has no generator of x-degree one; the criterion cannot run."""


class NoRankNSubmatrix(BiratError):
    pass


class LengthMismatch(BiratError):
    pass


class GradeTooSmall(BiratError):
    pass


class NoFullRankSubmatrix(BiratError):
    pass


class NotSaturated(BiratError):
    pass


class WrongCodimension(BiratError):
    pass


class UnsupportedSource(BiratError):
    pass


class NotMonomial(BiratError):
    pass


class InvalidDescriptor(BiratError):
    pass
