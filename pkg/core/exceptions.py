class WalkError(Exception):
    """Base class for every error raised by the walk toolkit."""


class InputError(WalkError, ValueError):
    """Malformed or out-of-contract input."""


class InvalidStepSet(InputError):
    pass


class QuadrantError(InputError):
    pass


class UnknownModel(InputError):
    pass


class ContractViolation(InputError):
    pass


class FitError(InputError):
    pass


class SeriesError(WalkError, ArithmeticError):
    pass


class TruncationOrderError(SeriesError):
    """A coefficient beyond the guaranteed order was requested."""


class SubstitutionOrderError(SeriesError):
    pass


class NonInvertibleError(SeriesError):
    pass


class NonSimpleRootError(SeriesError):
    pass


class KernelError(WalkError):
    pass


class OrbitIndecisionError(KernelError):
    """Two orbit pairs agree on their whole known range, which is too short to call them equal."""


class VerificationError(WalkError):
    pass
