import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
from sklearn.datasets import load_iris

IRIS_SPECIES = ("setosa", "versicolor", "virginica")


def write_iris_csv(path: Path) -> Path:
    iris = load_iris()
    lines = ["sepal_length,sepal_width,petal_length,petal_width,species"]
    for row, target in zip(iris.data, iris.target):
        lines.append(",".join("%.1f" % v for v in row) + "," + IRIS_SPECIES[target])
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def convert(csv_path: Path, out_dir: Path, *extra: str) -> Path:
    """Run the converter CLI in a subprocess; the harness only reads its files."""
    subprocess.run(
        [sys.executable, "-m", "vfp", "convert", str(csv_path),
         "--label-column", "species", "--out-dir", str(out_dir), *extra],
        check=True, capture_output=True, text=True,
    )
    return out_dir


@pytest.fixture(scope="session")
def iris_dir(tmp_path_factory) -> Path:
    root = tmp_path_factory.mktemp("iris")
    csv_path = write_iris_csv(root / "iris.csv")
    return convert(csv_path, root / "run", "--strategy", "distancing", "--seed", "1000")


@pytest.fixture()
def tiny_dataset():
    """Small synthetic LoadedDataset for fast training tests; two separable classes."""
    from vfp_harness import LoadedDataset

    rng = np.random.default_rng(42)
    n_per_class = 12
    images = []
    labels = []
    tags = []
    for cls in range(2):
        base = np.zeros((3, 5, 5), dtype=np.float32)
        base[:, cls + 1, cls + 1] = 1.0
        for i in range(n_per_class):
            noisy = base + rng.normal(0.0, 0.05, size=base.shape).astype(np.float32)
            images.append(np.clip(noisy, 0.0, 1.0))
            labels.append(cls)
            tags.append("train" if i < 9 else "test")
    order = rng.permutation(len(labels))
    return LoadedDataset(
        tensors=np.stack(images)[order],
        labels=np.asarray(labels, dtype=np.int64)[order],
        class_names=("left", "right"),
        split_tags=tuple(tags[i] for i in order),
        strategy="distancing",
    )
