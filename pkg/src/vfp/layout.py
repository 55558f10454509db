"""Feature-grid sizing, center-out spiral placement, and image embedding.

A dataset with k attributes gets an m x n feature grid (m = ceil(sqrt(k)),
n = ceil(k / m)).  Ranked attributes are assigned to grid cells along a
clockwise square spiral that starts at the grid center, so the cell's
Chebyshev ring never decreases with rank: early ranks sit where a 3x3 kernel
covers them most often.  The grid is then materialized into an image under
one of four embedding strategies:

    none        H x W = m x n, features everywhere
    zpos1       (m+2) x (n+2), one zero-pixel border
    zpos2       (m+4) x (n+4), two zero-pixel borders
    distancing  (2m+1) x (2n+1), features at odd pixel coordinates with a
                zero pixel between and around them
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlation import CorrelationProfile
from .errors import LengthMismatch

STRATEGIES = ("none", "zpos1", "zpos2", "distancing")


@dataclass(frozen=True)
class GridDims:
    """Feature grid dimensions: m rows by n columns."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("grid dims must be at least 1x1")

    @property
    def cells(self) -> int:
        return self.m * self.n


def derive_dims(k: int) -> GridDims:
    """Near-square grid for k attributes: m = ceil(sqrt(k)), n = ceil(k/m)."""
    if k < 1:
        raise ValueError("attribute count must be at least 1")
    m = math.isqrt(k)
    if m * m < k:
        m += 1
    n = (k + m - 1) // m
    return GridDims(m=m, n=n)


def vortex_cells(dims: GridDims) -> list[tuple[int, int]]:
    """Grid cells in clockwise center-out spiral order.

    The walk starts at (floor((m-1)/2), floor((n-1)/2)) and steps
    right, down, left, up with run lengths 1, 1, 2, 2, 3, 3, ...; lattice
    points outside the grid are skipped and the walk stops once every cell
    has been visited.
    """
    m, n = dims.m, dims.n
    row, col = (m - 1) // 2, (n - 1) // 2
    cells = [(row, col)] if 0 <= row < m and 0 <= col < n else []
    steps = ((0, 1), (1, 0), (0, -1), (-1, 0))
    run = 1
    leg = 0
    while len(cells) < dims.cells:
        dr, dc = steps[leg % 4]
        for _ in range(run):
            row += dr
            col += dc
            if 0 <= row < m and 0 <= col < n:
                cells.append((row, col))
                if len(cells) == dims.cells:
                    break
        leg += 1
        if leg % 2 == 0:
            run += 1
    return cells


@dataclass(frozen=True)
class VortexLayout:
    """Rank -> grid cell assignment for one dataset.

    ``cell_of_rank`` covers every grid cell; ranks at and beyond k are
    padding cells that always hold the value 0.
    """

    dims: GridDims
    cell_of_rank: tuple[tuple[int, int], ...]
    k: int

    def __post_init__(self):
        if self.k < 1 or self.k > self.dims.cells:
            raise ValueError("k must lie in [1, m*n]")
        if sorted(self.cell_of_rank) != sorted(
            (r, c) for r in range(self.dims.m) for c in range(self.dims.n)
        ):
            raise ValueError("cell_of_rank is not a bijection onto the grid")
        object.__setattr__(self, "cell_of_rank", tuple(tuple(c) for c in self.cell_of_rank))


def build_layout(dims: GridDims, k: int) -> VortexLayout:
    return VortexLayout(dims=dims, cell_of_rank=tuple(vortex_cells(dims)), k=k)


def place(profile: CorrelationProfile, sample, dims: GridDims) -> np.ndarray:
    """Arrange one sample's values on the feature grid.

    Cell at spiral position t receives sample[profile.order[t]]; cells past
    the attribute count stay 0.
    """
    sample = np.asarray(sample, dtype=np.float64)
    if sample.ndim != 1 or sample.size != profile.k:
        raise LengthMismatch(f"sample of length {sample.size} against {profile.k} ranked attributes")
    if profile.k > dims.cells:
        raise LengthMismatch(f"{profile.k} attributes cannot fit a {dims.m}x{dims.n} grid")
    return _place_on_cells(profile.order, sample, vortex_cells(dims), dims)


def _place_on_cells(order, sample: np.ndarray, cells, dims: GridDims) -> np.ndarray:
    grid = np.zeros((dims.m, dims.n), dtype=np.float64)
    for t, attr in enumerate(order):
        grid[cells[t]] = sample[attr]
    return grid


def feature_pixel(strategy: str, row: int, col: int) -> tuple[int, int]:
    """Pixel coordinate of grid cell (row, col) under a strategy."""
    if strategy == "none":
        return row, col
    if strategy == "zpos1":
        return row + 1, col + 1
    if strategy == "zpos2":
        return row + 2, col + 2
    if strategy == "distancing":
        return 2 * row + 1, 2 * col + 1
    raise ValueError(f"strategy must be one of {STRATEGIES}")


def image_shape(strategy: str, dims: GridDims) -> tuple[int, int]:
    """Embedded image height and width under a strategy."""
    m, n = dims.m, dims.n
    if strategy == "none":
        return m, n
    if strategy == "zpos1":
        return m + 2, n + 2
    if strategy == "zpos2":
        return m + 4, n + 4
    if strategy == "distancing":
        return 2 * m + 1, 2 * n + 1
    raise ValueError(f"strategy must be one of {STRATEGIES}")


@dataclass(frozen=True)
class EmbeddedImage:
    """2-D value matrix plus the mask of pixels that carry features."""

    values: np.ndarray
    occupancy: np.ndarray
    strategy: str
    source_dims: GridDims

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        occupancy = np.asarray(self.occupancy, dtype=bool)
        if values.shape != occupancy.shape:
            raise ValueError("values and occupancy shapes differ")
        if values.shape != image_shape(self.strategy, self.source_dims):
            raise ValueError("image shape does not follow the strategy's size law")
        if int(occupancy.sum()) != self.source_dims.cells:
            raise ValueError("occupancy must mark exactly m*n feature pixels")
        if np.any(values[~occupancy] != 0.0):
            raise ValueError("non-feature pixels must be 0")
        values.flags.writeable = False
        occupancy.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "occupancy", occupancy)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def occupancy_mask(strategy: str, dims: GridDims) -> np.ndarray:
    """Boolean mask of feature-pixel positions for a strategy."""
    h, w = image_shape(strategy, dims)
    mask = np.zeros((h, w), dtype=bool)
    for row in range(dims.m):
        for col in range(dims.n):
            mask[feature_pixel(strategy, row, col)] = True
    return mask


def embed(grid, strategy: str) -> EmbeddedImage:
    """Materialize a feature grid into an image under a strategy."""
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2:
        raise ValueError("feature grid must be 2-D")
    dims = GridDims(m=grid.shape[0], n=grid.shape[1])
    h, w = image_shape(strategy, dims)
    values = np.zeros((h, w), dtype=np.float64)
    for row in range(dims.m):
        for col in range(dims.n):
            values[feature_pixel(strategy, row, col)] = grid[row, col]
    return EmbeddedImage(
        values=values,
        occupancy=occupancy_mask(strategy, dims),
        strategy=strategy,
        source_dims=dims,
    )


def to_three_channels(img: EmbeddedImage) -> np.ndarray:
    """Replicate the grayscale plane into a 3 x H x W tensor."""
    return np.stack([img.values, img.values, img.values])


def layout_report(
    profile: CorrelationProfile,
    column_names,
    dims: GridDims,
    strategy: str,
) -> list[dict]:
    """Rank table rows: rank, column, score, grid cell, pixel coordinate."""
    cells = vortex_cells(dims)
    rows = []
    for t, attr in enumerate(profile.order):
        grid_row, grid_col = cells[t]
        pixel_row, pixel_col = feature_pixel(strategy, grid_row, grid_col)
        rows.append(
            {
                "rank": t,
                "column_name": column_names[attr],
                "score": float(profile.scores[attr]),
                "grid_row": grid_row,
                "grid_col": grid_col,
                "pixel_row": pixel_row,
                "pixel_col": pixel_col,
            }
        )
    return rows
