"""CSV ingestion, missing-value imputation, min-max scaling, and splits.

All statistics (imputation means, scaler bounds) are fitted on the training
rows only, so nothing from the test rows can leak into preprocessing.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateSplit, MissingLabelColumn, ParseError
from .prng import shuffled_indices

DEFAULT_MISSING_TOKENS = frozenset({"", "NA", "NaN"})


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TabularDataset:
    """Column-major numeric table with labels and a missing-value mask.

    ``values`` has shape (n_samples, n_attributes); ``missing_mask`` is True
    where the source cell was absent (such cells hold a 0.0 placeholder until
    imputation).  Instances are immutable; operations return new datasets.
    """

    column_names: tuple[str, ...]
    values: np.ndarray
    labels: tuple[str, ...]
    missing_mask: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        mask = np.asarray(self.missing_mask, dtype=bool)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D array")
        n, k = values.shape
        if k != len(self.column_names):
            raise ValueError("column_names length does not match values")
        if n != len(self.labels):
            raise ValueError("labels length does not match values")
        if mask.shape != values.shape:
            raise ValueError("missing_mask shape does not match values")
        if k < 1:
            raise ValueError("need at least one attribute")
        if n < 2:
            raise ValueError("need at least two samples")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "missing_mask", _frozen(mask))
        object.__setattr__(self, "column_names", tuple(self.column_names))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_attributes(self) -> int:
        return self.values.shape[1]

    @property
    def columns(self) -> list[np.ndarray]:
        return [self.values[:, i] for i in range(self.n_attributes)]

    def restrict_rows(self, indices) -> np.ndarray:
        """Value matrix restricted to the given sample indices."""
        return self.values[np.asarray(indices, dtype=int), :]


@dataclass(frozen=True)
class SplitAssignment:
    """Disjoint, exhaustive train/test partition of sample indices."""

    train_indices: tuple[int, ...]
    test_indices: tuple[int, ...]
    seed: int
    ratio: float

    def validate_for(self, n_samples: int) -> None:
        combined = sorted(self.train_indices) + sorted(self.test_indices)
        if sorted(combined) != list(range(n_samples)):
            raise ValueError("split is not a partition of the sample indices")

    def tag_of(self, n_samples: int) -> list[str]:
        """Per-sample 'train'/'test' tags, indexed by sample id."""
        tags = [""] * n_samples
        for i in self.train_indices:
            tags[i] = "train"
        for i in self.test_indices:
            tags[i] = "test"
        return tags


@dataclass(frozen=True)
class ScalerParams:
    """Per-column training minima and maxima for min-max scaling."""

    col_min: np.ndarray
    col_max: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "col_min", _frozen(np.asarray(self.col_min, dtype=np.float64)))
        object.__setattr__(self, "col_max", _frozen(np.asarray(self.col_max, dtype=np.float64)))


def load_csv(
    path: str | Path,
    label_column: str,
    missing_tokens: frozenset[str] | set[str] = DEFAULT_MISSING_TOKENS,
) -> TabularDataset:
    """Parse an RFC-4180 CSV (UTF-8, header row required) into a dataset.

    Non-label cells must parse as real numbers or match a missing token;
    matched cells get a 0.0 placeholder and a True missing_mask entry.
    No normalization is applied here.
    """
    source = Path(path)
    if not source.exists():
        raise FileNotFoundError(f"no such file: {source}")
    with source.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(0, "", "file is empty, header row required") from None
        if label_column not in header:
            raise MissingLabelColumn(f"label column {label_column!r} not in header {header}")
        label_pos = header.index(label_column)
        feature_names = tuple(name for i, name in enumerate(header) if i != label_pos)
        if not feature_names:
            raise ParseError(0, label_column, "no attribute columns besides the label")

        rows: list[list[float]] = []
        mask_rows: list[list[bool]] = []
        labels: list[str] = []
        for row_num, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise ParseError(row_num, "", f"expected {len(header)} fields, got {len(row)}")
            values_row: list[float] = []
            mask_row: list[bool] = []
            for i, cell in enumerate(row):
                if i == label_pos:
                    continue
                if cell in missing_tokens:
                    values_row.append(0.0)
                    mask_row.append(True)
                    continue
                try:
                    values_row.append(float(cell))
                except ValueError:
                    raise ParseError(row_num, header[i], f"cannot parse {cell!r} as a real number") from None
                mask_row.append(False)
            rows.append(values_row)
            mask_rows.append(mask_row)
            labels.append(row[label_pos])

    if len(rows) < 2:
        raise ParseError(len(rows), "", "need at least two data rows")
    return TabularDataset(
        column_names=feature_names,
        values=np.array(rows, dtype=np.float64),
        labels=tuple(labels),
        missing_mask=np.array(mask_rows, dtype=bool),
    )


def take_rows(ds: TabularDataset, indices) -> TabularDataset:
    """Dataset restricted to the given sample indices, in the given order."""
    idx = np.asarray(indices, dtype=int)
    return TabularDataset(
        column_names=ds.column_names,
        values=ds.values[idx, :],
        labels=tuple(ds.labels[i] for i in idx),
        missing_mask=ds.missing_mask[idx, :],
    )


def split(ds: TabularDataset, ratio: float, seed: int) -> SplitAssignment:
    """Deterministically partition sample indices into train/test.

    Indices are shuffled by the SplitMix64 Fisher-Yates walk documented in
    ``prng`` and the first round(ratio * n) of them become the training set
    (round = floor(x + 0.5)).  Identical (ds, ratio, seed) always yields the
    identical assignment.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie in (0, 1)")
    n = ds.n_samples
    n_train = int(np.floor(ratio * n + 0.5))
    if n_train == 0 or n_train == n:
        raise DegenerateSplit(f"ratio {ratio} on {n} samples leaves an empty side")
    order = shuffled_indices(n, seed)
    return SplitAssignment(
        train_indices=tuple(order[:n_train]),
        test_indices=tuple(order[n_train:]),
        seed=seed,
        ratio=ratio,
    )


def impute_missing(ds: TabularDataset, split: SplitAssignment) -> TabularDataset:
    """Replace missing cells with the train-rows mean of their column.

    Columns with no present training values are filled with 0.  Present
    values are never changed; the returned dataset has an all-false mask.
    """
    split.validate_for(ds.n_samples)
    if not ds.missing_mask.any():
        return TabularDataset(ds.column_names, ds.values.copy(), ds.labels, np.zeros_like(ds.missing_mask))

    values = ds.values.copy()
    train = np.asarray(split.train_indices, dtype=int)
    present_train = ~ds.missing_mask[train, :]
    fill = np.zeros(ds.n_attributes, dtype=np.float64)
    for col in range(ds.n_attributes):
        present = present_train[:, col]
        if present.any():
            fill[col] = ds.values[train[present], col].mean()
    rows, cols = np.nonzero(ds.missing_mask)
    values[rows, cols] = fill[cols]
    return TabularDataset(ds.column_names, values, ds.labels, np.zeros_like(ds.missing_mask))


def fit_min_max(ds: TabularDataset, split: SplitAssignment) -> ScalerParams:
    """Per-column minima/maxima over the training rows."""
    split.validate_for(ds.n_samples)
    if ds.missing_mask.any():
        raise ValueError("dataset still has missing values; impute first")
    train_values = ds.restrict_rows(split.train_indices)
    return ScalerParams(col_min=train_values.min(axis=0), col_max=train_values.max(axis=0))


def apply_min_max(ds: TabularDataset, params: ScalerParams) -> TabularDataset:
    """Scale to v' = (v - min) / (max - min), clamped into [0, 1].

    Columns whose training range is zero map to 0.5 everywhere.  Training
    rows land in [0, 1] by construction; the clamp only affects test values
    outside the training range.
    """
    if ds.missing_mask.any():
        raise ValueError("dataset still has missing values; impute first")
    span = params.col_max - params.col_min
    constant = span == 0
    safe_span = np.where(constant, 1.0, span)
    scaled = (ds.values - params.col_min) / safe_span
    scaled[:, constant] = 0.5
    np.clip(scaled, 0.0, 1.0, out=scaled)
    return TabularDataset(ds.column_names, scaled, ds.labels, ds.missing_mask.copy())


def min_max_scale(ds: TabularDataset, split: SplitAssignment) -> TabularDataset:
    """Fit the scaler on the train rows and apply it to every row."""
    return apply_min_max(ds, fit_min_max(ds, split))


def write_split_manifest(path: str | Path, split: SplitAssignment, n_samples: int) -> None:
    """Write the split as CSV with columns sample_id, split."""
    tags = split.tag_of(n_samples)
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["sample_id", "split"])
        for sample_id in range(n_samples):
            writer.writerow([sample_id, tags[sample_id]])
