"""Exception hierarchy shared by all modules."""


class SingwaveError(ValueError):
    """Base class for every error raised by the package."""


class DuplicateAtomError(SingwaveError):
    pass


class NonpositiveWeightError(SingwaveError):
    pass


class LevelTooLargeError(SingwaveError):
    pass


class ArcConditionViolated(SingwaveError):
    pass


class EmptyRestrictionError(SingwaveError):
    pass


class EvaluationFailure(SingwaveError):
    pass


class ParameterOutOfRange(SingwaveError):
    pass


class NotUnimodularError(SingwaveError):
    pass


class SingularPointError(SingwaveError):
    pass


class MisalignedVectorError(SingwaveError):
    pass


class MeasureMismatchError(SingwaveError):
    pass


class DimensionMismatchError(SingwaveError):
    pass


class NonRealSymbolError(SingwaveError):
    pass


class NonzeroDiagonalError(SingwaveError):
    pass


class AsymmetricKernelError(SingwaveError):
    pass


class NonzeroTailError(SingwaveError):
    pass


class DecompositionMismatchError(SingwaveError):
    pass


class InsufficientResolutionError(SingwaveError):
    pass


class NotProbabilityError(SingwaveError):
    pass


class TooCloseToBoundaryError(SingwaveError):
    pass


class RootFindingFailure(SingwaveError):
    pass


class IdentityResidualTooLarge(SingwaveError):
    pass
