from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import pytest

IRIS_SPECIES = ("setosa", "versicolor", "virginica")


def write_csv(path: Path, header: list[str], rows: list[list]) -> Path:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return path


@pytest.fixture(scope="session")
def iris_csv(tmp_path_factory) -> Path:
    """Iris as a CSV file with a trailing species label column."""
    from sklearn.datasets import load_iris

    data = load_iris()
    path = tmp_path_factory.mktemp("iris") / "iris.csv"
    header = ["sepal_length", "sepal_width", "petal_length", "petal_width", "species"]
    rows = [
        [f"{v:.1f}" for v in sample] + [IRIS_SPECIES[target]]
        for sample, target in zip(data.data, data.target)
    ]
    return write_csv(path, header, rows)


@pytest.fixture
def small_csv(tmp_path) -> Path:
    """Ten rows, four numeric columns, three classes; no missing cells."""
    rng = np.random.default_rng(7)
    rows = []
    for i in range(10):
        rows.append([f"{v:.3f}" for v in rng.uniform(-5.0, 5.0, size=4)] + [f"c{i % 3}"])
    return write_csv(tmp_path / "small.csv", ["a", "b", "c", "d", "label"], rows)
