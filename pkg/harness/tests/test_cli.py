import json

import pytest

from vfp_harness.cli import main


class TestScheduleCommand:
    def test_default_prints_twenty_epochs(self, capsys):
        assert main(["schedule"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 20
        assert lines[0] == "0,0.01"
        assert lines[5] == "5,0.01"

    def test_custom_epoch_count_and_band(self, capsys):
        assert main(["schedule", "--epochs", "3", "--lr-max", "0.1", "--lr-min", "0.05"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 3
        assert lines[0] == "0,0.1"
        for line in lines:
            _epoch, lr = line.split(",")
            assert 0.05 <= float(lr) <= 0.1

    def test_invalid_band_is_runtime_error(self, capsys):
        assert main(["schedule", "--lr-max", "0.001", "--lr-min", "0.01"]) == 1
        assert "error:" in capsys.readouterr().err


class TestRunCommand:
    def test_short_run_reports_each_seed(self, iris_dir, capsys):
        code = main(["run", str(iris_dir), "--epochs", "2", "--seeds", "1000"])
        assert code == 0
        out = capsys.readouterr().out
        assert "loaded 150 samples (5x5, 3 classes, 120 train / 30 test)" in out
        assert "seed 1000: accuracy" in out
        assert "mean accuracy:" in out

    def test_report_file_written(self, iris_dir, tmp_path, capsys):
        report_path = tmp_path / "report.json"
        code = main(["run", str(iris_dir), "--epochs", "2", "--seeds", "1000",
                     "--report", str(report_path)])
        assert code == 0
        payload = json.loads(report_path.read_text(encoding="utf-8"))
        assert payload["config"]["epochs"] == 2
        assert payload["config"]["seeds"] == [1000]
        assert len(payload["lr_trace"]) == 2
        assert str(report_path) in capsys.readouterr().out

    def test_missing_run_directory(self, tmp_path, capsys):
        assert main(["run", str(tmp_path / "absent")]) == 1
        assert "error:" in capsys.readouterr().err

    def test_invalid_epochs_is_runtime_error(self, iris_dir, capsys):
        assert main(["run", str(iris_dir), "--epochs", "0"]) == 1
        assert "error:" in capsys.readouterr().err


class TestUsage:
    def test_no_command_is_usage_error(self, capsys):
        assert main([]) == 2

    def test_unknown_command_is_usage_error(self, capsys):
        assert main(["evaluate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "vfp-harness" in capsys.readouterr().out

    def test_run_help_lists_defaults(self, capsys):
        assert main(["run", "--help"]) == 0
        flat = " ".join(capsys.readouterr().out.split())
        assert "default: 1000 2000 3000" in flat
        assert "default: 200" in flat
