"""Cosine annealing with warm restarts, restarting every few epochs.

Within each cycle the rate decays from lr_max along a half cosine toward
lr_min and snaps back to lr_max at the next cycle boundary.  Boundaries
return lr_max exactly (no floating-point residue), so recorded traces can be
checked with equality.
"""

from __future__ import annotations

import math


def restart_lr(epoch: int, *, lr_max: float = 0.01, lr_min: float = 0.001, period: int = 5) -> float:
    """Learning rate for the given zero-based epoch."""
    if period < 1:
        raise ValueError("period must be at least 1")
    if not lr_min < lr_max:
        raise ValueError("lr_min must be below lr_max")
    if epoch < 0:
        raise ValueError("epoch must be nonnegative")
    phase = epoch % period
    if phase == 0:
        return lr_max
    return lr_min + (lr_max - lr_min) * (1.0 + math.cos(math.pi * phase / period)) / 2.0


def lr_trace(epochs: int, *, lr_max: float = 0.01, lr_min: float = 0.001, period: int = 5) -> list[float]:
    """Per-epoch rates for a whole run."""
    return [restart_lr(e, lr_max=lr_max, lr_min=lr_min, period=period) for e in range(epochs)]
