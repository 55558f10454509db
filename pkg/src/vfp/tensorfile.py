"""Bit-exact float32 tensor container for converted samples.

File layout, all little-endian:

    offset  size  field
    0       4     magic "VFPT"
    4       2     version, unsigned 16-bit, currently 1
    6       4     c, unsigned 32-bit channel count
    10      4     h, unsigned 32-bit height
    14      4     w, unsigned 32-bit width
    18      4*c*h*w   payload: IEEE-754 binary32 values, row-major within a
                      channel, channels consecutive (index = (ch*h + row)*w + col)

The header is 18 bytes; a 3 x 5 x 5 tensor therefore occupies 318 bytes.
Converted samples always carry c = 3 identical channels.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import VfpError

MAGIC = b"VFPT"
VERSION = 1
_HEADER = struct.Struct("<4sHIII")


class FormatError(VfpError):
    """A tensor file's bytes do not follow the declared layout."""


def write_tensor(path: str | Path, tensor) -> None:
    """Write a C x H x W float32 tensor; values must be finite.

    Input of any float dtype is converted to float32; reading the file back
    reproduces that float32 data exactly.
    """
    data = np.ascontiguousarray(np.asarray(tensor), dtype="<f4")
    if data.ndim != 3:
        raise ValueError("tensor must have shape (C, H, W)")
    if not np.all(np.isfinite(data)):
        raise ValueError("tensor values must be finite")
    c, h, w = data.shape
    with Path(path).open("wb") as handle:
        handle.write(_HEADER.pack(MAGIC, VERSION, c, h, w))
        handle.write(data.tobytes())


def read_tensor(path: str | Path) -> np.ndarray:
    """Read a tensor file back into a (C, H, W) float32 array."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError(f"{path}: truncated header ({len(raw)} bytes)")
    magic, version, c, h, w = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    expected = _HEADER.size + 4 * c * h * w
    if len(raw) != expected:
        raise FormatError(f"{path}: expected {expected} bytes, found {len(raw)}")
    payload = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size)
    return payload.reshape(c, h, w).copy()
