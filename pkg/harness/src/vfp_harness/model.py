"""Pre-activation ResNet-18 sized for small single-digit-resolution inputs.

Differences from the common ImageNet configuration, both deliberate: the stem
is a 3x3 stride-1 convolution (no 7x7, no max-pool), so a 5x5 input is not
destroyed before the residual stages; and normalization/activation precede
each convolution (pre-activation ordering).  Global average pooling makes the
parameter count independent of input height and width.
"""

from __future__ import annotations

import torch
from torch import nn

STAGE_CHANNELS = (64, 128, 256, 512)
BLOCKS_PER_STAGE = 2  # the 18-layer configuration


class PreActBlock(nn.Module):
    def __init__(self, in_channels: int, out_channels: int, stride: int):
        super().__init__()
        self.bn1 = nn.BatchNorm2d(in_channels)
        self.conv1 = nn.Conv2d(in_channels, out_channels, 3, stride=stride, padding=1, bias=False)
        self.bn2 = nn.BatchNorm2d(out_channels)
        self.conv2 = nn.Conv2d(out_channels, out_channels, 3, stride=1, padding=1, bias=False)
        self.shortcut: nn.Module | None = None
        if stride != 1 or in_channels != out_channels:
            self.shortcut = nn.Conv2d(in_channels, out_channels, 1, stride=stride, bias=False)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        pre = torch.relu(self.bn1(x))
        residual = self.shortcut(pre) if self.shortcut is not None else x
        out = self.conv1(pre)
        out = self.conv2(torch.relu(self.bn2(out)))
        return out + residual


class PreActResNet18(nn.Module):
    def __init__(self, n_classes: int, in_channels: int = 3):
        super().__init__()
        if n_classes < 2:
            raise ValueError("need at least two classes")
        self.stem = nn.Conv2d(in_channels, STAGE_CHANNELS[0], 3, stride=1, padding=1, bias=False)
        stages = []
        prev = STAGE_CHANNELS[0]
        for stage_index, channels in enumerate(STAGE_CHANNELS):
            for block_index in range(BLOCKS_PER_STAGE):
                stride = 2 if stage_index > 0 and block_index == 0 else 1
                stages.append(PreActBlock(prev, channels, stride))
                prev = channels
        self.stages = nn.Sequential(*stages)
        self.final_bn = nn.BatchNorm2d(prev)
        self.pool = nn.AdaptiveAvgPool2d(1)
        self.classifier = nn.Linear(prev, n_classes)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        out = self.stem(x)
        out = self.stages(out)
        out = torch.relu(self.final_bn(out))
        out = self.pool(out).flatten(1)
        return self.classifier(out)


def build_model(input_hw: tuple[int, int], n_classes: int, in_channels: int = 3) -> PreActResNet18:
    """Network for images of the given height/width with n_classes outputs."""
    h, w = input_hw
    if h < 3 or w < 3:
        raise ValueError(f"input {h}x{w} is too small; need at least 3x3")
    return PreActResNet18(n_classes=n_classes, in_channels=in_channels)
