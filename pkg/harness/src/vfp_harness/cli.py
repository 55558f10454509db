"""Command-line entry point for the training harness.

    vfp-harness run OUT_DIR [--seeds ...] [--epochs N] [--report PATH]
    vfp-harness schedule [--epochs N]

Exit codes: 0 success, 1 data or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import HarnessError
from .schedule import lr_trace
from .tensorio import load_manifest
from .train import TrainConfig, train_eval


def cmd_run(args: argparse.Namespace) -> int:
    data = load_manifest(args.run_dir)
    cfg = TrainConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        lr_max=args.lr_max,
        lr_min=args.lr_min,
        restart_period=args.restart_period,
        momentum=args.momentum,
        seeds=tuple(args.seeds),
    )
    print(
        f"loaded {data.n_samples} samples ({data.image_hw[0]}x{data.image_hw[1]}, "
        f"{data.n_classes} classes, {len(data.train_indices)} train / {len(data.test_indices)} test)"
    )
    report = train_eval(cfg, data)
    sys.stdout.write(report.summary())
    if args.report:
        Path(args.report).write_text(report.to_json(), encoding="utf-8")
        print(f"report written to {args.report}")
    return 0


def cmd_schedule(args: argparse.Namespace) -> int:
    trace = lr_trace(args.epochs, lr_max=args.lr_max, lr_min=args.lr_min, period=args.restart_period)
    for epoch, lr in enumerate(trace):
        print(f"{epoch},{lr!r}")
    return 0


def _add_schedule_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lr-max", type=float, default=0.01, help="cycle-start learning rate (default: 0.01)")
    parser.add_argument("--lr-min", type=float, default=0.001, help="annealing floor (default: 0.001)")
    parser.add_argument("--restart-period", type=int, default=5, help="epochs per cosine cycle (default: 5)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vfp-harness", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="train and evaluate on a converter output directory")
    p_run.add_argument("run_dir", help="directory holding manifest.csv/manifest.json and tensor files")
    p_run.add_argument("--seeds", type=int, nargs="+", default=[1000, 2000, 3000],
                       help="one model is trained per seed (default: 1000 2000 3000)")
    p_run.add_argument("--epochs", type=int, default=200, help="training epochs (default: 200)")
    p_run.add_argument("--batch-size", type=int, default=128, help="mini-batch size (default: 128)")
    p_run.add_argument("--momentum", type=float, default=0.9, help="SGD momentum (default: 0.9)")
    _add_schedule_args(p_run)
    p_run.add_argument("--report", metavar="PATH", help="also write the report as JSON")
    p_run.set_defaults(func=cmd_run)

    p_schedule = sub.add_parser("schedule", help="print the per-epoch learning-rate trace as CSV")
    p_schedule.add_argument("--epochs", type=int, default=20, help="epochs to print (default: 20)")
    _add_schedule_args(p_schedule)
    p_schedule.set_defaults(func=cmd_schedule)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except HarnessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
