"""Read-only loader for converter output directories.

The converter's tree is consumed purely through its documented file formats:
``manifest.csv`` (sample_id, label, split, tensor_path, png_path),
``manifest.json`` (run header, of which only image_shape and strategy are
used here), and one ``.vfpt`` tensor file per sample:

    offset 0   4 bytes   magic "VFPT"
    offset 4   2 bytes   version, little-endian u16, = 1
    offset 6   12 bytes  c, h, w as little-endian u32
    offset 18  4*c*h*w   float32 payload, channel-major, row-major

Nothing in this module writes to the input directory.
"""

from __future__ import annotations

import csv
import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FormatError

MAGIC = b"VFPT"
VERSION = 1
_HEADER = struct.Struct("<4sHIII")


def read_tensor_file(path: str | Path) -> np.ndarray:
    """Parse one tensor file; every failure names the offending file."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise FormatError(f"{path}: missing tensor file") from None
    if len(raw) < _HEADER.size:
        raise FormatError(f"{path}: {len(raw)} bytes is shorter than the {_HEADER.size}-byte header")
    magic, version, c, h, w = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise FormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FormatError(f"{path}: unsupported version {version}")
    expected = _HEADER.size + 4 * c * h * w
    if len(raw) != expected:
        raise FormatError(f"{path}: expected {expected} bytes for {c}x{h}x{w}, found {len(raw)}")
    payload = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size)
    return payload.reshape(c, h, w).copy()


@dataclass(frozen=True)
class LoadedDataset:
    """All tensors of one converter run, with integer class labels."""

    tensors: np.ndarray  # (N, C, H, W) float32
    labels: np.ndarray  # (N,) int64, contiguous class indices
    class_names: tuple[str, ...]
    split_tags: tuple[str, ...]
    strategy: str

    def __post_init__(self):
        if self.tensors.ndim != 4:
            raise ValueError("tensors must be (N, C, H, W)")
        if self.tensors.shape[0] != self.labels.shape[0] or self.tensors.shape[0] != len(self.split_tags):
            raise ValueError("tensor, label, and split counts disagree")

    @property
    def n_samples(self) -> int:
        return self.tensors.shape[0]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def image_hw(self) -> tuple[int, int]:
        return self.tensors.shape[2], self.tensors.shape[3]

    @property
    def train_indices(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.split_tags) == "train")

    @property
    def test_indices(self) -> np.ndarray:
        return np.flatnonzero(np.asarray(self.split_tags) == "test")


def load_manifest(run_dir: str | Path) -> LoadedDataset:
    """Load a converter output directory into memory.

    Labels are mapped to contiguous class indices by sorted label name, so
    the mapping is stable across runs of the same data.
    """
    run_dir = Path(run_dir)
    csv_path = run_dir / "manifest.csv"
    json_path = run_dir / "manifest.json"
    for required in (csv_path, json_path):
        if not required.exists():
            raise FormatError(f"{run_dir}: not a converter output directory (missing {required.name})")

    header = json.loads(json_path.read_text(encoding="utf-8"))
    c, h, w = (int(v) for v in header["image_shape"])

    with csv_path.open("r", encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))
    if not rows:
        raise FormatError(f"{csv_path}: no entries")

    tensors = np.empty((len(rows), c, h, w), dtype=np.float32)
    raw_labels: list[str] = []
    split_tags: list[str] = []
    for i, row in enumerate(rows):
        tensor_path = run_dir / row["tensor_path"]
        tensor = read_tensor_file(tensor_path)
        if tensor.shape != (c, h, w):
            raise FormatError(f"{tensor_path}: shape {tensor.shape} does not match header {(c, h, w)}")
        tensors[i] = tensor
        raw_labels.append(row["label"])
        split_tags.append(row["split"])

    class_names = tuple(sorted(set(raw_labels)))
    class_index = {name: idx for idx, name in enumerate(class_names)}
    labels = np.array([class_index[name] for name in raw_labels], dtype=np.int64)
    return LoadedDataset(
        tensors=tensors,
        labels=labels,
        class_names=class_names,
        split_tags=tuple(split_tags),
        strategy=str(header.get("strategy", "")),
    )
