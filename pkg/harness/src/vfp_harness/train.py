"""Seeded training/evaluation runs over a loaded tensor dataset.

Each seed trains its own model from scratch with SGD (momentum 0.9) under
the cosine-restart schedule, then reports exact test-split accuracy
(correct/total).  A non-finite loss aborts that seed's run with a
DivergenceWarning; the run is recorded as divergent and excluded from the
mean/std.  With a fixed seed list the whole report is deterministic on CPU.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from .errors import DivergenceWarning, HarnessError
from .model import build_model
from .schedule import restart_lr
from .tensorio import LoadedDataset


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    batch_size: int = 128
    lr_max: float = 0.01
    lr_min: float = 0.001
    restart_period: int = 5
    momentum: float = 0.9
    seeds: tuple[int, ...] = (1000, 2000, 3000)

    def __post_init__(self):
        if self.epochs < 1 or self.batch_size < 1:
            raise ValueError("epochs and batch_size must be positive")
        if not self.lr_min < self.lr_max:
            raise ValueError("lr_min must be below lr_max")
        if self.restart_period < 1:
            raise ValueError("restart_period must be at least 1")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError("momentum must lie in [0, 1)")
        if not self.seeds:
            raise ValueError("need at least one seed")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))


@dataclass(frozen=True)
class SeedRun:
    seed: int
    accuracy: float | None  # None when the run diverged
    diverged: bool


@dataclass(frozen=True)
class EvalReport:
    """Per-seed accuracies with mean/std over the non-divergent runs."""

    runs: tuple[SeedRun, ...]
    mean_accuracy: float
    std_accuracy: float
    lr_trace: tuple[float, ...]
    config: TrainConfig = field(repr=False)

    def __post_init__(self):
        accuracies = self.accuracies
        if not accuracies:
            raise ValueError("report needs at least one finished run")
        if any(not 0.0 <= a <= 1.0 for a in accuracies):
            raise ValueError("accuracies must lie in [0, 1]")
        if abs(self.mean_accuracy - float(np.mean(accuracies))) > 1e-12:
            raise ValueError("mean is inconsistent with the per-seed accuracies")
        if abs(self.std_accuracy - float(np.std(accuracies))) > 1e-12:
            raise ValueError("std is inconsistent with the per-seed accuracies")

    @property
    def accuracies(self) -> list[float]:
        return [run.accuracy for run in self.runs if not run.diverged]

    @property
    def divergent_seeds(self) -> list[int]:
        return [run.seed for run in self.runs if run.diverged]

    def to_json(self) -> str:
        doc = {
            "config": {
                "epochs": self.config.epochs,
                "batch_size": self.config.batch_size,
                "lr_max": self.config.lr_max,
                "lr_min": self.config.lr_min,
                "restart_period": self.config.restart_period,
                "momentum": self.config.momentum,
                "seeds": list(self.config.seeds),
            },
            "runs": [
                {"seed": run.seed, "accuracy": run.accuracy, "diverged": run.diverged}
                for run in self.runs
            ],
            "mean_accuracy": self.mean_accuracy,
            "std_accuracy": self.std_accuracy,
            "lr_trace": list(self.lr_trace),
        }
        return json.dumps(doc, indent=2) + "\n"

    def summary(self) -> str:
        lines = [
            f"seeds: {', '.join(str(run.seed) for run in self.runs)}",
        ]
        for run in self.runs:
            status = "diverged" if run.diverged else f"accuracy {run.accuracy:.4f}"
            lines.append(f"  seed {run.seed}: {status}")
        lines.append(f"mean accuracy: {self.mean_accuracy:.4f} (std {self.std_accuracy:.4f})")
        if self.divergent_seeds:
            lines.append(f"excluded divergent seeds: {self.divergent_seeds}")
        return "\n".join(lines) + "\n"


def _train_one_seed(
    cfg: TrainConfig, data: LoadedDataset, seed: int
) -> tuple[float | None, list[float]]:
    torch.manual_seed(seed)
    model = build_model(data.image_hw, data.n_classes)
    optimizer = torch.optim.SGD(model.parameters(), lr=cfg.lr_max, momentum=cfg.momentum)
    loss_fn = nn.CrossEntropyLoss()

    x = torch.from_numpy(data.tensors)
    y = torch.from_numpy(data.labels)
    train_idx = torch.from_numpy(data.train_indices)
    test_idx = torch.from_numpy(data.test_indices)
    if train_idx.numel() == 0 or test_idx.numel() == 0:
        raise HarnessError("dataset needs nonempty train and test splits")

    shuffler = torch.Generator().manual_seed(seed)
    trace: list[float] = []
    for epoch in range(cfg.epochs):
        lr = restart_lr(epoch, lr_max=cfg.lr_max, lr_min=cfg.lr_min, period=cfg.restart_period)
        for group in optimizer.param_groups:
            group["lr"] = lr
        trace.append(float(optimizer.param_groups[0]["lr"]))

        model.train()
        perm = train_idx[torch.randperm(train_idx.numel(), generator=shuffler)]
        for chunk in perm.split(cfg.batch_size):
            optimizer.zero_grad()
            loss = loss_fn(model(x[chunk]), y[chunk])
            if not torch.isfinite(loss):
                warnings.warn(
                    f"seed {seed}: non-finite loss at epoch {epoch}; excluding this run",
                    DivergenceWarning,
                )
                return None, trace
            loss.backward()
            optimizer.step()

    model.eval()
    correct = 0
    with torch.no_grad():
        for chunk in test_idx.split(cfg.batch_size):
            predictions = model(x[chunk]).argmax(dim=1)
            correct += int((predictions == y[chunk]).sum().item())
    return correct / int(test_idx.numel()), trace


def train_eval(cfg: TrainConfig, data: LoadedDataset) -> EvalReport:
    """Train and evaluate once per seed; aggregate over finished runs."""
    runs: list[SeedRun] = []
    trace: list[float] = []
    for seed in cfg.seeds:
        accuracy, seed_trace = _train_one_seed(cfg, data, seed)
        if len(seed_trace) > len(trace):
            trace = seed_trace
        runs.append(SeedRun(seed=seed, accuracy=accuracy, diverged=accuracy is None))

    finished = [run.accuracy for run in runs if not run.diverged]
    if not finished:
        raise HarnessError("every seed diverged; nothing to report")
    return EvalReport(
        runs=tuple(runs),
        mean_accuracy=float(np.mean(finished)),
        std_accuracy=float(np.std(finished)),
        lr_trace=tuple(trace),
        config=cfg,
    )
