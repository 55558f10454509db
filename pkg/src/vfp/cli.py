"""Command-line entry point.

Subcommands:

    convert   CSV -> tensors + manifests under an output directory
    analyze   convolution budget table, formula vs. window-sliding oracle
    scores    correlation scores as CSV (column_name, score, rank)
    layout    rank -> grid cell -> pixel report as JSON or CSV
    inspect   print a manifest entry, its layout table and occupancy mask

Exit codes: 0 success, 1 data or runtime error, 2 usage error.  Verbosity is
controlled by the VFP_LOG environment variable (debug/info/warning/error).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

from .convbudget import CASE_KEYS, BudgetRow, brute_force, closed_form
from .correlation import DIRECTIONS, profile_dataset
from .emit import emit_dataset, read_manifest
from .errors import UnsupportedDims, VfpError
from .layout import STRATEGIES, GridDims, build_layout, derive_dims, image_shape, layout_report, occupancy_mask
from .tabular import (
    DEFAULT_MISSING_TOKENS,
    SplitAssignment,
    TabularDataset,
    apply_min_max,
    fit_min_max,
    impute_missing,
    load_csv,
    split,
    take_rows,
)
from .tensorfile import read_tensor

log = logging.getLogger("vfp.cli")

_LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


def _configure_logging() -> None:
    level = _LOG_LEVELS.get(os.environ.get("VFP_LOG", "").lower(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _ratio_arg(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("ratio must be strictly between 0 and 1")
    return value


def _dims_arg(text: str) -> GridDims:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN with integer sides, got {text!r}") from None
    if m < 1 or n < 1:
        raise argparse.ArgumentTypeError("grid sides must be at least 1")
    return GridDims(m=m, n=n)


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="CSV file with a header row")
    parser.add_argument("--label-column", required=True, help="name of the label column")
    parser.add_argument(
        "--missing-token",
        action="append",
        default=[],
        metavar="TOKEN",
        help="extra cell value treated as missing (repeatable); "
        "'' / 'NA' / 'NaN' are always recognized",
    )
    parser.add_argument("--ratio", type=_ratio_arg, default=0.8, help="train fraction (default: 0.8)")
    parser.add_argument("--seed", type=int, default=1000, help="shuffle seed (default: 1000)")
    parser.add_argument(
        "--direction",
        choices=DIRECTIONS,
        default="ascending",
        help="rank order; ascending puts the least-correlated attribute at the center (default)",
    )
    parser.add_argument(
        "--corr-scope",
        choices=("train", "full"),
        default="train",
        help="rows used for correlation scores (default: train)",
    )


def _prepare(args: argparse.Namespace):
    """Shared convert/scores/layout front half: load, split, impute, scale."""
    tokens = DEFAULT_MISSING_TOKENS | set(args.missing_token)
    ds = load_csv(args.input, args.label_column, tokens)
    assignment = split(ds, args.ratio, args.seed)
    ds = apply_min_max(*_fit(ds, assignment))
    return ds, assignment


def _fit(ds: TabularDataset, assignment: SplitAssignment):
    imputed = impute_missing(ds, assignment)
    return imputed, fit_min_max(imputed, assignment)


def _profile(ds: TabularDataset, assignment: SplitAssignment, args: argparse.Namespace):
    scope = ds if args.corr_scope == "full" else take_rows(ds, assignment.train_indices)
    return profile_dataset(scope, args.direction)


def cmd_convert(args: argparse.Namespace) -> int:
    tokens = DEFAULT_MISSING_TOKENS | set(args.missing_token)
    ds = load_csv(args.input, args.label_column, tokens)
    assignment = split(ds, args.ratio, args.seed)
    imputed, scaler = _fit(ds, assignment)
    scaled = apply_min_max(imputed, scaler)
    profile = _profile(scaled, assignment, args)
    dims = derive_dims(ds.n_attributes)
    layout = build_layout(dims, ds.n_attributes)
    manifest = emit_dataset(
        scaled,
        profile,
        layout,
        args.strategy,
        args.out_dir,
        split=assignment,
        scaler=scaler,
        emit_png=args.emit_png,
        jobs=args.jobs,
    )
    c, h, w = manifest.image_shape
    print(f"attributes: k={ds.n_attributes}  grid: {dims.m}x{dims.n}  image: {c}x{h}x{w} ({args.strategy})")
    print(
        f"wrote {len(manifest.entries)} tensors to {args.out_dir} "
        f"(train={len(assignment.train_indices)} test={len(assignment.test_indices)} seed={args.seed})"
    )
    return 0


def _budget_cells(budget, extra_keys: tuple[int, ...]) -> list[str]:
    cells = [str(budget.counts.get(key, 0)) for key in CASE_KEYS]
    cells.append(str(sum(budget.counts[key] for key in extra_keys if key in budget.counts)))
    cells.append(str(budget.total))
    return cells


def _print_table(lines: list[list[str]], stream=None) -> None:
    stream = stream or sys.stdout
    widths = [max(len(row[i]) for row in lines) for i in range(len(lines[0]))]
    for row in lines:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip(), file=stream)


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.dims:
        dims_list = list(args.dims)
    else:
        dims_list = [derive_dims(args.attrs)]
        print(f"attrs k={args.attrs} -> grid {dims_list[0].m}x{dims_list[0].n}")
    strategies = tuple(args.strategy) if args.strategy else STRATEGIES
    explicit = bool(args.strategy)

    rows: list[BudgetRow] = []
    skipped: list[str] = []
    for dims in dims_list:
        for strategy in strategies:
            try:
                rows.append(
                    BudgetRow(strategy=strategy, dims=dims, closed=closed_form(strategy, dims), brute=brute_force(strategy, dims))
                )
            except UnsupportedDims as exc:
                if explicit:
                    raise
                skipped.append(f"skipped {strategy} at {dims.m}x{dims.n}: {exc}")

    extra_keys = tuple(
        sorted({key for row in rows for key in row.brute.counts if key not in CASE_KEYS})
    )
    header = ["grid", "strategy", "source"] + [f"N{k}" for k in CASE_KEYS] + ["other", "total", "check"]
    lines = [header]
    for row in rows:
        tag = f"{row.dims.m}x{row.dims.n}"
        lines.append([tag, row.strategy, "closed"] + _budget_cells(row.closed, ()) + ["ok" if row.agrees else "MISMATCH"])
        lines.append([tag, row.strategy, "brute"] + _budget_cells(row.brute, extra_keys) + [""])
    _print_table(lines)
    for note in skipped:
        print(note)

    if args.csv:
        with Path(args.csv).open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["m", "n", "strategy", "source"] + [f"n{k}" for k in CASE_KEYS] + ["other", "total", "agrees"])
            for row in rows:
                base = [row.dims.m, row.dims.n, row.strategy]
                writer.writerow(base + ["closed"] + _budget_cells(row.closed, ()) + [str(row.agrees).lower()])
                writer.writerow(base + ["brute"] + _budget_cells(row.brute, extra_keys) + [str(row.agrees).lower()])

    disagreements = [row for row in rows if not row.agrees]
    if disagreements:
        for row in disagreements:
            print(
                f"mismatch: {row.strategy} at {row.dims.m}x{row.dims.n}: "
                f"closed {row.closed.counts} != brute {dict(row.brute.counts)}",
                file=sys.stderr,
            )
        return 1
    return 0


def cmd_scores(args: argparse.Namespace) -> int:
    ds, assignment = _prepare(args)
    profile = _profile(ds, assignment, args)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(["column_name", "score", "rank"])
    for rank_pos, attr in enumerate(profile.order):
        writer.writerow([ds.column_names[attr], repr(float(profile.scores[attr])), rank_pos])
    text = buffer.getvalue()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_layout(args: argparse.Namespace) -> int:
    ds, assignment = _prepare(args)
    profile = _profile(ds, assignment, args)
    dims = derive_dims(ds.n_attributes)
    report = layout_report(profile, ds.column_names, dims, args.strategy)
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(report[0].keys()))
        writer.writeheader()
        writer.writerows(report)
        text = buffer.getvalue()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_inspect(args: argparse.Namespace) -> int:
    manifest = read_manifest(args.out_dir)
    entry = manifest.entry_for(args.sample_id)
    tensor = read_tensor(Path(args.out_dir) / entry.tensor_path)
    print(f"sample {entry.sample_id}: label={entry.label} split={entry.split}")
    print(f"tensor: {entry.tensor_path} shape={tensor.shape[0]}x{tensor.shape[1]}x{tensor.shape[2]}")
    if entry.png_path:
        print(f"png: {entry.png_path}")

    header = json.loads((Path(args.out_dir) / "manifest.json").read_text(encoding="utf-8"))
    lines = [["rank", "column", "score", "grid", "pixel"]]
    for row in header["layout"]:
        lines.append(
            [
                str(row["rank"]),
                row["column_name"],
                f"{row['score']:.6f}",
                f"({row['grid_row']},{row['grid_col']})",
                f"({row['pixel_row']},{row['pixel_col']})",
            ]
        )
    _print_table(lines)

    mask = occupancy_mask(manifest.strategy, manifest.dims)
    print(f"occupancy ({manifest.strategy}, {mask.shape[0]}x{mask.shape[1]}):")
    for mask_row in mask:
        print("  " + "".join("#" if cell else "." for cell in mask_row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfp", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_convert = sub.add_parser("convert", help="convert a CSV into tensor images plus manifests")
    _add_dataset_args(p_convert)
    p_convert.add_argument("--out-dir", required=True, help="output directory (created if missing)")
    p_convert.add_argument(
        "--strategy",
        choices=STRATEGIES,
        default="distancing",
        help="embedding strategy (default: distancing)",
    )
    p_convert.add_argument("--emit-png", action="store_true", help="also write grayscale preview PNGs")
    p_convert.add_argument(
        "--jobs",
        type=int,
        default=os.cpu_count() or 1,
        help="parallel sample writers (default: available cores)",
    )
    p_convert.set_defaults(func=cmd_convert)

    p_analyze = sub.add_parser("analyze", help="convolution budget: formulas vs. exhaustive window count")
    group = p_analyze.add_mutually_exclusive_group(required=True)
    group.add_argument("--dims", type=_dims_arg, action="append", metavar="MxN", help="grid dims (repeatable)")
    group.add_argument("--attrs", type=int, metavar="K", help="attribute count; grid derived as for convert")
    p_analyze.add_argument(
        "--strategy",
        choices=STRATEGIES,
        action="append",
        help="strategy to analyze (repeatable; default: all four)",
    )
    p_analyze.add_argument("--csv", metavar="PATH", help="also write the table as CSV")
    p_analyze.set_defaults(func=cmd_analyze)

    p_scores = sub.add_parser("scores", help="correlation scores as CSV: column_name, score, rank")
    _add_dataset_args(p_scores)
    p_scores.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
    p_scores.set_defaults(func=cmd_scores)

    p_layout = sub.add_parser("layout", help="rank -> grid -> pixel report")
    _add_dataset_args(p_layout)
    p_layout.add_argument(
        "--strategy",
        choices=STRATEGIES,
        default="distancing",
        help="embedding strategy (default: distancing)",
    )
    p_layout.add_argument("--format", choices=("json", "csv"), default="json", help="output format (default: json)")
    p_layout.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p_layout.set_defaults(func=cmd_layout)

    p_inspect = sub.add_parser("inspect", help="show one converted sample and the layout map")
    p_inspect.add_argument("out_dir", help="directory previously produced by convert")
    p_inspect.add_argument("--sample-id", type=int, required=True, help="sample to display")
    p_inspect.set_defaults(func=cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VfpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
