"""Exception hierarchy shared by every module."""


class MedianWallsError(Exception):
    """Base class for library errors."""


class InvalidInputError(MedianWallsError, ValueError):
    """Input violates a documented precondition."""


class NotMedianError(InvalidInputError):
    """A median-space operation received a non-median metric.

    ``witness`` holds the lexicographically smallest triple whose median set
    does not have exactly one element.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CapExceededError(MedianWallsError):
    """A configured size cap would be exceeded."""


class VerificationError(MedianWallsError, AssertionError):
    """A proved identity failed to hold; this always indicates a bug."""
