"""Training harness for image datasets produced by the vfp converter.

Reads tensor files and manifests from a converter output directory, trains
a small pre-activation residual network per seed under a cosine-annealing
restart schedule, and reports mean/std test accuracy across seeds.
"""

from .errors import DivergenceWarning, FormatError, HarnessError
from .model import PreActBlock, PreActResNet18, build_model
from .schedule import lr_trace, restart_lr
from .tensorio import LoadedDataset, load_manifest, read_tensor_file
from .train import EvalReport, SeedRun, TrainConfig, train_eval

__version__ = "0.1.0"

__all__ = [
    "DivergenceWarning",
    "EvalReport",
    "FormatError",
    "HarnessError",
    "LoadedDataset",
    "PreActBlock",
    "PreActResNet18",
    "SeedRun",
    "TrainConfig",
    "build_model",
    "load_manifest",
    "lr_trace",
    "read_tensor_file",
    "restart_lr",
    "train_eval",
]
