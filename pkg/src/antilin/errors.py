"""Exception types shared across the package."""


class AntilinError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(AntilinError):
    """Operands have incompatible shapes."""


class NotSymmetric(AntilinError):
    """Matrix expected to be complex symmetric is not."""


class NotHermitian(AntilinError):
    """Matrix expected to be Hermitian is not."""


class NotPsd(AntilinError):
    """Hermitian matrix has an eigenvalue below the negative tolerance."""


class NotInvolution(AntilinError):
    """Candidate conjugation matrix K fails K * conj(K) = I."""


class NotIsometric(AntilinError):
    """Candidate conjugation matrix K is not unitary."""


class NotNormal(AntilinError):
    """Operation requires an antilinear normal operator."""


class NotUnit(AntilinError):
    """Vector expected to have unit norm does not."""


class OutsideRange(AntilinError):
    """Requested target lies outside the numerical range."""


class DimensionOne(AntilinError):
    """Operation requires an underlying space of dimension at least two."""


class PivotSingular(AntilinError):
    """A block pivot that must be inverted is numerically singular."""

    def __init__(self, pivot: str, min_singular: float):
        self.pivot = pivot
        self.min_singular = min_singular
        super().__init__(
            f"pivot {pivot} is numerically singular "
            f"(min singular value {min_singular:.3e})"
        )


class UnknownKind(AntilinError):
    """Unrecognized generator kind."""


class InvalidOperatorFile(AntilinError):
    """Operator file failed schema validation."""
