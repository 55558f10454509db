"""Dataset emission: one tensor file per sample plus manifests.

An output directory holds:

    sample_{id}.vfpt     float32 tensor, 3 identical channels (see tensorfile)
    sample_{id}.png      optional grayscale preview
    manifest.csv         sample_id, label, split, tensor_path, png_path
    manifest.json        run header: strategy, direction, grid dims, k, seed,
                         ratio, scaler parameters, scores and rank layout
    split_manifest.csv   sample_id, split

Emission is deterministic: identical inputs produce byte-identical trees.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .correlation import CorrelationProfile
from .errors import InconsistentInputs, NotFound
from .layout import GridDims, VortexLayout, _place_on_cells, embed, image_shape, layout_report, to_three_channels
from .pngfile import write_png
from .tabular import ScalerParams, SplitAssignment, TabularDataset, write_split_manifest
from .tensorfile import write_tensor

MANIFEST_CSV = "manifest.csv"
MANIFEST_JSON = "manifest.json"
SPLIT_CSV = "split_manifest.csv"


@dataclass(frozen=True)
class ManifestEntry:
    sample_id: int
    label: str
    split: str
    tensor_path: str
    png_path: str | None


@dataclass(frozen=True)
class DatasetManifest:
    """Run header plus one entry per emitted sample."""

    strategy: str
    direction: str
    dims: GridDims
    k: int
    seed: int
    ratio: float
    column_names: tuple[str, ...]
    scores: tuple[float, ...]
    order: tuple[int, ...]
    scaler_min: tuple[float, ...]
    scaler_max: tuple[float, ...]
    image_shape: tuple[int, int, int]
    entries: tuple[ManifestEntry, ...]

    def __post_init__(self):
        paths = [e.tensor_path for e in self.entries]
        if len(set(paths)) != len(paths):
            raise ValueError("tensor paths must be unique")

    def entry_for(self, sample_id: int) -> ManifestEntry:
        for entry in self.entries:
            if entry.sample_id == sample_id:
                return entry
        raise NotFound(f"sample id {sample_id} not in manifest")


def emit_dataset(
    ds: TabularDataset,
    profile: CorrelationProfile,
    layout: VortexLayout,
    strategy: str,
    out_dir: str | Path,
    *,
    split: SplitAssignment,
    scaler: ScalerParams,
    emit_png: bool = False,
    jobs: int = 1,
) -> DatasetManifest:
    """Convert every sample and write the output tree.

    The dataset must already be imputed and scaled; ``scaler`` is echoed into
    the manifest header so downstream consumers can invert or audit it.
    """
    if profile.k != ds.n_attributes:
        raise InconsistentInputs(f"profile ranks {profile.k} attributes, dataset has {ds.n_attributes}")
    if layout.k != ds.n_attributes:
        raise InconsistentInputs(f"layout was built for k={layout.k}, dataset has {ds.n_attributes}")
    if scaler.col_min.size != ds.n_attributes:
        raise InconsistentInputs("scaler parameter length does not match the dataset")
    split.validate_for(ds.n_samples)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tags = split.tag_of(ds.n_samples)
    cells = layout.cell_of_rank
    dims = layout.dims

    def emit_sample(sample_id: int) -> ManifestEntry:
        grid = _place_on_cells(profile.order, ds.values[sample_id, :], cells, dims)
        img = embed(grid, strategy)
        tensor = to_three_channels(img).astype(np.float32)
        tensor_name = f"sample_{sample_id}.vfpt"
        write_tensor(out / tensor_name, tensor)
        png_name = None
        if emit_png:
            png_name = f"sample_{sample_id}.png"
            write_png(out / png_name, img.values)
        return ManifestEntry(
            sample_id=sample_id,
            label=ds.labels[sample_id],
            split=tags[sample_id],
            tensor_path=tensor_name,
            png_path=png_name,
        )

    ids = range(ds.n_samples)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(emit_sample, ids))
    else:
        entries = [emit_sample(i) for i in ids]
    entries.sort(key=lambda e: e.sample_id)

    h, w = image_shape(strategy, dims)
    manifest = DatasetManifest(
        strategy=strategy,
        direction=profile.direction,
        dims=dims,
        k=ds.n_attributes,
        seed=split.seed,
        ratio=split.ratio,
        column_names=ds.column_names,
        scores=tuple(float(s) for s in profile.scores),
        order=profile.order,
        scaler_min=tuple(float(v) for v in scaler.col_min),
        scaler_max=tuple(float(v) for v in scaler.col_max),
        image_shape=(3, h, w),
        entries=tuple(entries),
    )
    _write_manifest_csv(out / MANIFEST_CSV, manifest)
    _write_manifest_json(out / MANIFEST_JSON, manifest)
    write_split_manifest(out / SPLIT_CSV, split, ds.n_samples)
    return manifest


def _write_manifest_csv(path: Path, manifest: DatasetManifest) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["sample_id", "label", "split", "tensor_path", "png_path"])
        for e in manifest.entries:
            writer.writerow([e.sample_id, e.label, e.split, e.tensor_path, e.png_path or ""])


def _write_manifest_json(path: Path, manifest: DatasetManifest) -> None:
    profile = CorrelationProfile(
        scores=np.asarray(manifest.scores), order=manifest.order, direction=manifest.direction
    )
    header = {
        "strategy": manifest.strategy,
        "direction": manifest.direction,
        "grid": {"m": manifest.dims.m, "n": manifest.dims.n},
        "k": manifest.k,
        "seed": manifest.seed,
        "ratio": manifest.ratio,
        "image_shape": list(manifest.image_shape),
        "column_names": list(manifest.column_names),
        "scores": list(manifest.scores),
        "order": list(manifest.order),
        "scaler": {"min": list(manifest.scaler_min), "max": list(manifest.scaler_max)},
        "layout": layout_report(profile, manifest.column_names, manifest.dims, manifest.strategy),
        "n_samples": len(manifest.entries),
    }
    path.write_text(json.dumps(header, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_manifest(out_dir: str | Path) -> DatasetManifest:
    """Load a manifest pair (json header + csv entries) back into memory."""
    out = Path(out_dir)
    json_path = out / MANIFEST_JSON
    csv_path = out / MANIFEST_CSV
    if not json_path.exists() or not csv_path.exists():
        raise NotFound(f"no manifest under {out}")
    header = json.loads(json_path.read_text(encoding="utf-8"))
    entries = []
    with csv_path.open("r", encoding="utf-8", newline="") as handle:
        for row in csv.DictReader(handle):
            entries.append(
                ManifestEntry(
                    sample_id=int(row["sample_id"]),
                    label=row["label"],
                    split=row["split"],
                    tensor_path=row["tensor_path"],
                    png_path=row["png_path"] or None,
                )
            )
    return DatasetManifest(
        strategy=header["strategy"],
        direction=header["direction"],
        dims=GridDims(m=header["grid"]["m"], n=header["grid"]["n"]),
        k=header["k"],
        seed=header["seed"],
        ratio=header["ratio"],
        column_names=tuple(header["column_names"]),
        scores=tuple(header["scores"]),
        order=tuple(header["order"]),
        scaler_min=tuple(header["scaler"]["min"]),
        scaler_max=tuple(header["scaler"]["max"]),
        image_shape=tuple(header["image_shape"]),
        entries=tuple(entries),
    )
