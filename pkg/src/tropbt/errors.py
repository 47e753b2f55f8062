"""Exception hierarchy shared by all modules."""


class TropBTError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 3


class InputError(TropBTError):
    exit_code = 1


class MissingEntry(InputError):
    pass


class DuplicateEntry(InputError):
    pass


class MalformedRational(InputError):
    pass


class SignNotPlusMinus(InputError):
    pass


class PointOutsideSimplex(InputError):
    pass


class NotSmooth(TropBTError):
    exit_code = 2


class NonGenericCurve(TropBTError):
    exit_code = 2


class NotBitangent(TropBTError):
    pass


class UnclassifiableTangency(TropBTError):
    pass


class ClassCountNotSeven(TropBTError):
    pass


class UnrecognizedShape(TropBTError):
    pass


class WeightMismatch(TropBTError):
    pass


class AmbiguousParameter(TropBTError):
    pass


class ParameterNotFound(TropBTError):
    pass


class ConditionMismatch(TropBTError):
    pass


class ZeroCoefficient(TropBTError):
    pass


class DegreeMismatch(TropBTError):
    pass


class BijectionFailure(TropBTError):
    pass
