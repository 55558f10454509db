"""Minimal 8-bit grayscale PNG writer for image previews.

Hand-rolled on struct + zlib so the emitted bytes are fully deterministic.
Previews are lossy by design (training consumes the float tensors): a value
v in [0, 1] becomes the pixel floor(255*v + 0.5), i.e. rounding half up.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

_SIGNATURE = bytes([137, 80, 78, 71, 13, 10, 26, 10])


def _chunk(tag: bytes, data: bytes) -> bytes:
    crc = zlib.crc32(data, zlib.crc32(tag))
    return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", crc)


def write_png(path: str | Path, img) -> None:
    """Write an H x W matrix of values in [0, 1] as a grayscale PNG."""
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError("image must be a 2-D matrix")
    if not np.all(np.isfinite(img)) or img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("image values must lie in [0, 1]")
    pixels = np.floor(255.0 * img + 0.5).astype(np.uint8)
    h, w = pixels.shape

    # bit depth 8, color type 0 (grayscale), no interlace
    header = struct.pack(">IIBBBBB", w, h, 8, 0, 0, 0, 0)
    scanlines = bytearray()
    for row in pixels:
        scanlines.append(0)  # filter type 0
        scanlines.extend(row.tobytes())
    with Path(path).open("wb") as handle:
        handle.write(_SIGNATURE)
        handle.write(_chunk(b"IHDR", header))
        handle.write(_chunk(b"IDAT", zlib.compress(bytes(scanlines), 9)))
        handle.write(_chunk(b"IEND", b""))
