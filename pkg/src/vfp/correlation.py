"""Pearson correlation and summed-absolute-correlation attribute ranking.

Each attribute's score is the sum over all attributes (self included) of the
absolute Pearson correlation coefficient; the rank permutation orders
attributes by that score, ascending or descending, with ties broken by the
original column index so output is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NonFiniteScore
from .tabular import TabularDataset

DIRECTIONS = ("ascending", "descending")


def _center(vec: np.ndarray) -> tuple[np.ndarray, float]:
    """Deviations from the mean and their summed squares."""
    centered = vec - vec.mean()
    return centered, float(np.dot(centered, centered))


def _pearson_centered(ca: np.ndarray, saa: float, cb: np.ndarray, sbb: float) -> float:
    # Zero-variance convention: a constant column has no linear relationship
    # with anything, so r = 0 instead of the undefined 0/0.
    if saa == 0.0 or sbb == 0.0:
        return 0.0
    # sqrt(saa * sbb) keeps r(x, x) == 1.0 exactly: the numerator then equals
    # saa bit-for-bit and IEEE-754 guarantees sqrt(fl(s*s)) == s.
    return float(np.dot(ca, cb)) / math.sqrt(saa * sbb)


def pearson(a, b) -> float:
    """Pearson correlation coefficient of two equal-length vectors.

    Returns 0.0 when either vector has zero variance.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise LengthMismatch(f"vectors of shape {a.shape} and {b.shape}")
    if a.size < 2:
        raise ValueError("need at least two data points")
    ca, saa = _center(a)
    cb, sbb = _center(b)
    return _pearson_centered(ca, saa, cb, sbb)


def correlation_scores(ds: TabularDataset) -> np.ndarray:
    """Summed absolute pairwise correlations, one score per attribute.

    score[i] = sum over j (including j == i) of |r(x_i, x_j)|.  Attributes of
    a dataset with no constant columns therefore score at least 1 from the
    self term; constant columns score 0 everywhere by the zero-variance
    convention and rank as the least correlated.
    """
    if ds.missing_mask.any():
        raise ValueError("dataset still has missing values; impute first")
    k = ds.n_attributes
    centered: list[np.ndarray] = []
    sq_sums: list[float] = []
    for col in ds.columns:
        c, s = _center(col)
        centered.append(c)
        sq_sums.append(s)
    scores = np.zeros(k, dtype=np.float64)
    for i in range(k):
        scores[i] += abs(_pearson_centered(centered[i], sq_sums[i], centered[i], sq_sums[i]))
        for j in range(i + 1, k):
            r = abs(_pearson_centered(centered[i], sq_sums[i], centered[j], sq_sums[j]))
            scores[i] += r
            scores[j] += r
    return scores


def rank(scores, direction: str) -> tuple[int, ...]:
    """Index permutation sorting scores in the given direction.

    The sort is stable in both directions: equal scores keep their original
    column order.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    c = np.asarray(scores, dtype=np.float64)
    if c.size == 0:
        raise ValueError("scores must be nonempty")
    if not np.all(np.isfinite(c)):
        raise NonFiniteScore("scores contain NaN or infinity")
    if direction == "ascending":
        return tuple(sorted(range(c.size), key=lambda i: (c[i], i)))
    return tuple(sorted(range(c.size), key=lambda i: (-c[i], i)))


@dataclass(frozen=True)
class CorrelationProfile:
    """Scores plus the rank permutation that orders the attributes."""

    scores: np.ndarray
    order: tuple[int, ...]
    direction: str

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "order", tuple(self.order))
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if sorted(self.order) != list(range(scores.size)):
            raise ValueError("order is not a permutation of the attribute indices")
        ordered = scores[list(self.order)]
        if self.direction == "ascending":
            if np.any(np.diff(ordered) < 0):
                raise ValueError("order is not ascending in score")
        elif np.any(np.diff(ordered) > 0):
            raise ValueError("order is not descending in score")

    @property
    def k(self) -> int:
        return self.scores.size


def profile_dataset(ds: TabularDataset, direction: str) -> CorrelationProfile:
    """Compute scores and the rank permutation for a dataset."""
    scores = correlation_scores(ds)
    return CorrelationProfile(scores=scores, order=rank(scores, direction), direction=direction)
