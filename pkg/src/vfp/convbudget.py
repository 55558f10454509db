"""Counts of 3x3 valid-convolution windows per number of features covered.

For each embedding strategy this module answers: of all 3x3 window positions
that fit fully inside the embedded image, how many cover exactly i feature
pixels?  ``closed_form`` evaluates the per-strategy formulas; ``brute_force``
slides an actual window over the occupancy mask and histograms what it sees.
The two must agree exactly; any disagreement means the geometry is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ImageTooSmall, UnsupportedDims
from .layout import STRATEGIES, GridDims, image_shape, occupancy_mask

CASE_KEYS = (1, 2, 3, 4, 6, 9)


@dataclass(frozen=True)
class ConvBudget:
    """Window counts per features-covered case, plus their total."""

    strategy: str
    dims: GridDims
    counts: dict[int, int]
    total: int

    def __post_init__(self):
        if self.total != sum(self.counts.values()):
            raise ValueError("total does not equal the sum of the counts")
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("counts must be nonnegative")

    def nonzero_counts(self) -> dict[int, int]:
        return {i: c for i, c in sorted(self.counts.items()) if c != 0}


def same_counts(a: ConvBudget, b: ConvBudget) -> bool:
    """Exact agreement on every case count and on the total."""
    return a.nonzero_counts() == b.nonzero_counts() and a.total == b.total


def closed_form(strategy: str, dims: GridDims) -> ConvBudget:
    """Window counts from the per-strategy formulas.

    Requires m, n >= 2 for zpos1/zpos2/distancing and m, n >= 3 for the
    no-padding case; below that the formulas go negative or no window fits.
    """
    m, n = dims.m, dims.n
    if strategy == "none":
        if m < 3 or n < 3:
            raise UnsupportedDims(f"no-padding needs m, n >= 3, got {m}x{n}")
        counts = {9: (m - 2) * (n - 2)}
    elif strategy == "zpos1":
        if m < 2 or n < 2:
            raise UnsupportedDims(f"zpos1 needs m, n >= 2, got {m}x{n}")
        counts = {4: 4, 6: 2 * m + 2 * n - 8, 9: m * n - 2 * m - 2 * n + 4}
    elif strategy == "zpos2":
        if m < 2 or n < 2:
            raise UnsupportedDims(f"zpos2 needs m, n >= 2, got {m}x{n}")
        counts = {
            1: 4,
            2: 8,
            3: 2 * m + 2 * n - 8,
            4: 4,
            6: 2 * m + 2 * n - 8,
            9: m * n - 2 * m - 2 * n + 4,
        }
    elif strategy == "distancing":
        if m < 2 or n < 2:
            raise UnsupportedDims(f"distancing needs m, n >= 2, got {m}x{n}")
        counts = {1: m * n, 2: 2 * m * n - m - n, 4: m * n - m - n + 1}
    else:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    return ConvBudget(strategy=strategy, dims=dims, counts=counts, total=sum(counts.values()))


def expected_total(strategy: str, dims: GridDims) -> int:
    """The strategy's all-cases total as a standalone identity."""
    m, n = dims.m, dims.n
    if strategy == "none":
        return (m - 2) * (n - 2)
    if strategy == "zpos1":
        return m * n
    if strategy == "zpos2":
        return m * n + 2 * m + 2 * n + 4
    if strategy == "distancing":
        return 4 * m * n - 2 * m - 2 * n + 1
    raise ValueError(f"strategy must be one of {STRATEGIES}")


def brute_force(strategy: str, dims: GridDims) -> ConvBudget:
    """Window counts from exhaustively sliding a 3x3 window.

    Builds the strategy's occupancy mask and counts the feature pixels under
    every valid window position.  Serves as the independent oracle for
    ``closed_form``.
    """
    h, w = image_shape(strategy, dims)
    if h < 3 or w < 3:
        raise ImageTooSmall(f"embedded image {h}x{w} is smaller than one 3x3 window")
    occupancy = occupancy_mask(strategy, dims).astype(np.int64)
    windows = np.lib.stride_tricks.sliding_window_view(occupancy, (3, 3))
    covered = windows.sum(axis=(2, 3))
    values, freq = np.unique(covered, return_counts=True)
    # Every observed coverage is kept, even ones outside CASE_KEYS: a stray
    # case must surface as a disagreement with closed_form, never vanish.
    counts = {int(v): int(f) for v, f in zip(values, freq)}
    return ConvBudget(strategy=strategy, dims=dims, counts=counts, total=int(covered.size))


@dataclass(frozen=True)
class BudgetRow:
    """One strategy/dims comparison between formulas and the oracle."""

    strategy: str
    dims: GridDims
    closed: ConvBudget
    brute: ConvBudget

    @property
    def agrees(self) -> bool:
        return same_counts(self.closed, self.brute)


def budget_report(dims_list, strategies) -> list[BudgetRow]:
    """Evaluate formulas against the window-sliding oracle, per strategy."""
    dims_list = list(dims_list)
    strategies = list(strategies)
    if not dims_list or not strategies:
        raise ValueError("dims_list and strategies must be nonempty")
    rows = []
    for dims in dims_list:
        for strategy in strategies:
            rows.append(
                BudgetRow(
                    strategy=strategy,
                    dims=dims,
                    closed=closed_form(strategy, dims),
                    brute=brute_force(strategy, dims),
                )
            )
    return rows
