import dataclasses
import json

import numpy as np
import pytest

from vfp_harness import (
    EvalReport,
    HarnessError,
    SeedRun,
    TrainConfig,
    lr_trace,
    train_eval,
)

FAST = TrainConfig(epochs=6, batch_size=16, seeds=(1000,))


class TestTrainConfig:
    def test_defaults(self):
        cfg = TrainConfig()
        assert cfg.epochs == 200
        assert cfg.batch_size == 128
        assert cfg.lr_max == 0.01 and cfg.lr_min == 0.001
        assert cfg.restart_period == 5
        assert cfg.momentum == 0.9
        assert cfg.seeds == (1000, 2000, 3000)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"epochs": 0},
            {"batch_size": 0},
            {"seeds": ()},
            {"lr_min": 0.01},
            {"momentum": -0.1},
        ],
    )
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            TrainConfig(**kwargs)


class TestTrainEval:
    def test_same_seed_twice_is_identical(self, tiny_dataset):
        first = train_eval(FAST, tiny_dataset)
        second = train_eval(FAST, tiny_dataset)
        assert first.accuracies == second.accuracies
        assert first.lr_trace == second.lr_trace

    def test_learns_separable_toy_data(self, tiny_dataset):
        cfg = TrainConfig(epochs=30, batch_size=18, seeds=(1000,))
        report = train_eval(cfg, tiny_dataset)
        assert report.mean_accuracy >= 0.8

    def test_lr_trace_follows_schedule(self, tiny_dataset):
        report = train_eval(FAST, tiny_dataset)
        assert list(report.lr_trace) == lr_trace(FAST.epochs)

    def test_multiple_seeds_aggregate(self, tiny_dataset):
        cfg = dataclasses.replace(FAST, seeds=(1000, 2000))
        report = train_eval(cfg, tiny_dataset)
        assert [run.seed for run in report.runs] == [1000, 2000]
        accs = report.accuracies
        assert report.mean_accuracy == pytest.approx(np.mean(accs))
        assert report.std_accuracy == pytest.approx(np.std(accs))

    def test_all_splits_required(self, tiny_dataset):
        train_only = dataclasses.replace(
            tiny_dataset, split_tags=("train",) * tiny_dataset.n_samples
        )
        with pytest.raises(HarnessError):
            train_eval(FAST, train_only)

    def test_report_json_round_trip(self, tiny_dataset):
        report = train_eval(FAST, tiny_dataset)
        payload = json.loads(report.to_json())
        assert payload["config"]["epochs"] == FAST.epochs
        assert payload["mean_accuracy"] == report.mean_accuracy
        assert payload["runs"][0]["seed"] == 1000
        assert payload["lr_trace"] == list(report.lr_trace)

    def test_summary_mentions_each_seed(self, tiny_dataset):
        report = train_eval(FAST, tiny_dataset)
        text = report.summary()
        assert "seed 1000" in text
        assert "mean" in text


class TestEvalReport:
    def _runs(self, *accs):
        return tuple(SeedRun(seed=1000 + i, accuracy=a, diverged=a is None)
                     for i, a in enumerate(accs))

    def _report(self, runs, mean, std):
        return EvalReport(runs=runs, mean_accuracy=mean, std_accuracy=std,
                          lr_trace=[0.01], config=TrainConfig())

    def test_divergent_runs_excluded_from_statistics(self):
        runs = self._runs(0.9, None, 0.7)
        report = self._report(runs, 0.8, 0.1)
        assert report.accuracies == [0.9, 0.7]
        assert report.divergent_seeds == [1001]

    def test_inconsistent_mean_rejected(self):
        with pytest.raises(ValueError):
            self._report(self._runs(0.9, 0.7), 0.75, 0.1)

    def test_inconsistent_std_rejected(self):
        with pytest.raises(ValueError):
            self._report(self._runs(0.9, 0.7), 0.8, 0.2)

    def test_all_divergent_rejected(self):
        with pytest.raises(ValueError):
            self._report(self._runs(None, None), 0.0, 0.0)

    def test_out_of_range_accuracy_rejected(self):
        with pytest.raises(ValueError):
            self._report(self._runs(1.5), 1.5, 0.0)
