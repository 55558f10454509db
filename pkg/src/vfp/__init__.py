"""Correlation-ranked spiral embedding of tabular data into CNN-ready images."""

from .convbudget import BudgetRow, ConvBudget, brute_force, budget_report, closed_form, expected_total
from .correlation import CorrelationProfile, correlation_scores, pearson, profile_dataset, rank
from .emit import DatasetManifest, ManifestEntry, emit_dataset, read_manifest
from .errors import (
    DegenerateSplit,
    ImageTooSmall,
    InconsistentInputs,
    LengthMismatch,
    MissingLabelColumn,
    NonFiniteScore,
    NotFound,
    ParseError,
    UnsupportedDims,
    VfpError,
)
from .layout import (
    STRATEGIES,
    EmbeddedImage,
    GridDims,
    VortexLayout,
    build_layout,
    derive_dims,
    embed,
    feature_pixel,
    image_shape,
    layout_report,
    occupancy_mask,
    place,
    to_three_channels,
    vortex_cells,
)
from .prng import SplitMix64, shuffled_indices
from .tabular import (
    ScalerParams,
    SplitAssignment,
    TabularDataset,
    apply_min_max,
    fit_min_max,
    impute_missing,
    load_csv,
    min_max_scale,
    split,
    take_rows,
)
from .tensorfile import read_tensor, write_tensor

__version__ = "0.1.0"

__all__ = [
    "BudgetRow",
    "ConvBudget",
    "CorrelationProfile",
    "DatasetManifest",
    "DegenerateSplit",
    "EmbeddedImage",
    "GridDims",
    "ImageTooSmall",
    "InconsistentInputs",
    "LengthMismatch",
    "ManifestEntry",
    "MissingLabelColumn",
    "NonFiniteScore",
    "NotFound",
    "ParseError",
    "STRATEGIES",
    "ScalerParams",
    "SplitAssignment",
    "SplitMix64",
    "TabularDataset",
    "UnsupportedDims",
    "VfpError",
    "VortexLayout",
    "apply_min_max",
    "brute_force",
    "budget_report",
    "build_layout",
    "closed_form",
    "correlation_scores",
    "derive_dims",
    "embed",
    "emit_dataset",
    "expected_total",
    "feature_pixel",
    "fit_min_max",
    "image_shape",
    "impute_missing",
    "layout_report",
    "load_csv",
    "min_max_scale",
    "occupancy_mask",
    "pearson",
    "place",
    "profile_dataset",
    "rank",
    "read_manifest",
    "read_tensor",
    "shuffled_indices",
    "split",
    "take_rows",
    "to_three_channels",
    "vortex_cells",
    "write_tensor",
]
