"""Exception types shared across the package."""


class RpdError(Exception):
    """Base class for all package errors."""


class StructuralError(RpdError):
    """Inputs are structurally incompatible (dimension or grid mismatch)."""


class DomainError(RpdError, ValueError):
    """A parameter lies outside its admissible domain."""


class DegenerateSampleError(RpdError):
    """Every sampled direction has zero projected MAD; the sample is
    pointwise constant in all sampled directions."""


class EmptyDirectionSetError(RpdError):
    """The regularization threshold removed every direction.

    Carries the largest observed projected MAD so callers can pick a
    usable threshold.
    """

    def __init__(self, beta: float, max_mad: float):
        self.beta = beta
        self.max_mad = max_mad
        super().__init__(
            f"no direction has projected MAD >= {beta!r}; the largest observed "
            f"MAD is {max_mad!r}. Lower beta (or the quantile level u) below "
            f"that value."
        )


class CurveFileError(RpdError):
    """A curve CSV file failed to parse."""
