"""Exception types raised across the package."""

from __future__ import annotations


class VfpError(Exception):
    """Base class for all errors raised by this package."""


class MissingLabelColumn(VfpError):
    """The requested label column is not present in the CSV header."""


class ParseError(VfpError):
    """A cell failed to parse as a real number and matched no missing token."""

    def __init__(self, row: int, col: str, message: str):
        super().__init__(f"row {row}, column {col!r}: {message}")
        self.row = row
        self.col = col


class DegenerateSplit(VfpError):
    """A train/test split would leave one side empty."""


class LengthMismatch(VfpError):
    """Two vectors that must have equal length do not."""


class NonFiniteScore(VfpError):
    """A correlation score is NaN or infinite; ranking is undefined."""


class UnsupportedDims(VfpError):
    """Grid dimensions fall below an operation's supported range."""


class ImageTooSmall(VfpError):
    """The embedded image is smaller than one 3x3 window."""


class InconsistentInputs(VfpError):
    """Pipeline stages were given objects that do not belong together."""


class NotFound(VfpError):
    """A requested manifest, file, or sample id does not exist."""
