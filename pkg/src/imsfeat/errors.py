"""Exception hierarchy shared by all stages."""


class IMSFeatError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(IMSFeatError, ValueError):
    """Instance text could not be parsed."""


class InvariantViolation(IMSFeatError, ValueError):
    """A parsed or constructed instance breaks one of the standing invariants."""


class CapacityTooLarge(IMSFeatError, MemoryError):
    """A pseudopolynomial table over capacities would exceed the memory budget."""


class EmptyProfile(IMSFeatError, ValueError):
    pass


class InvalidUpperBound(IMSFeatError, ValueError):
    pass


class InvalidGroupCount(IMSFeatError, ValueError):
    pass


class TooManyItems(IMSFeatError, ValueError):
    """Brute-force enumeration refused: the instance is too large."""


class MissingExternalFeature(IMSFeatError, KeyError):
    pass


class LogOverflow(IMSFeatError, OverflowError):
    """A log-domain count does not fit in a double on the linear scale."""


class StageError(IMSFeatError):
    """Wraps a failure during feature extraction with the stage that raised it."""

    def __init__(self, stage, cause):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


class DegenerateFeatureWarning(UserWarning):
    """A min-max feature is constant over the fitting corpus; it normalizes to 0."""
