"""Exception hierarchy shared by all tropint modules."""


class TropintError(Exception):
    """Base class for every error raised by this package."""


class ZeroVector(TropintError, ValueError):
    pass


class NotSquare(TropintError, ValueError):
    pass


class RankDeficient(TropintError, ValueError):
    """Generators do not span the ambient space (non-transverse configuration)."""


class InsufficientRank(TropintError, ValueError):
    pass


class EmptyInput(TropintError, ValueError):
    pass


class DimensionTooLarge(TropintError, ValueError):
    pass


class DimensionMismatch(TropintError, ValueError):
    pass


class NonIntegralNormalizedVolume(TropintError, ArithmeticError):
    """A lattice polytope produced a fractional normalized volume (internal bug)."""


class PointNotOnHypersurface(TropintError, ValueError):
    pass


class NotTransverse(TropintError, ValueError):
    pass


class NonGenericPerturbation(TropintError, ValueError):
    """The perturbation vector is not generic for the instance; resample it."""


class NonGenericInstance(TropintError, ValueError):
    """Coefficients produce a non-transverse lifting; perturb coefficients."""


class InvalidCodimension(TropintError, ValueError):
    pass


class UnsupportedDimension(TropintError, ValueError):
    pass
