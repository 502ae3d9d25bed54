class CoarseLabError(Exception):
    """Base class for every error raised by the workbench."""


class ConfigError(CoarseLabError, ValueError):
    """An experiment configuration or command argument is invalid."""


class BoundExceededError(CoarseLabError, ValueError):
    """A coordinate index reaches past the group's coordinate_bound."""


class UnboundedWindowError(CoarseLabError, ValueError):
    """A support-window was requested on a coordinate with infinite order."""


class BallTooLargeError(CoarseLabError, ValueError):
    """An enumerated ball or ideal ball would exceed the configured cap."""


class WrongGroupError(CoarseLabError, ValueError):
    """The operation is only defined for a different kind of group."""


class TooLongSequenceError(CoarseLabError, ValueError):
    """An exponential check was asked for a sequence longer than its budget."""


class ScanExhaustedError(CoarseLabError):
    """No candidate within the scan limit satisfies the selection conditions."""

    def __init__(self, message, selected=(), last_failure=None):
        super().__init__(message)
        self.selected = tuple(selected)
        self.last_failure = last_failure


class IndexOutOfRangeError(CoarseLabError, IndexError):
    """A Hamming point uses an index beyond the certificate's sequence."""


class CandidatesInsufficientError(CoarseLabError, ValueError):
    """The candidate family does not cover the window."""


class EmptyInteriorError(CoarseLabError, ValueError):
    """The interior margin leaves no window element to score."""
