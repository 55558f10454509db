class HarnessError(Exception):
    """Base class for harness failures."""


class FormatError(HarnessError):
    """A tensor or manifest file does not match its documented byte layout."""


class DivergenceWarning(UserWarning):
    """Training produced a non-finite loss; the run is recorded and excluded."""
