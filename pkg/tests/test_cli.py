from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

from vfp.cli import main

from conftest import write_csv


def tree_digest(root: Path) -> dict[str, str]:
    return {
        p.relative_to(root).as_posix(): hashlib.sha256(p.read_bytes()).hexdigest()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


class TestConvert:
    def test_summary_and_outputs(self, small_csv, tmp_path, capsys):
        out = tmp_path / "out"
        code = main(["convert", str(small_csv), "--label-column", "label", "--out-dir", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "k=4" in stdout
        assert "grid: 2x2" in stdout
        assert "image: 3x5x5" in stdout
        assert "wrote 10 tensors" in stdout
        assert len(list(out.glob("*.vfpt"))) == 10

    def test_rerun_byte_identical(self, small_csv, tmp_path):
        args = ["convert", str(small_csv), "--label-column", "label", "--emit-png"]
        assert main(args + ["--out-dir", str(tmp_path / "a")]) == 0
        assert main(args + ["--out-dir", str(tmp_path / "b")]) == 0
        assert tree_digest(tmp_path / "a") == tree_digest(tmp_path / "b")

    def test_every_strategy_runs(self, small_csv, tmp_path):
        for strategy in ("none", "zpos1", "zpos2", "distancing"):
            code = main(
                ["convert", str(small_csv), "--label-column", "label",
                 "--out-dir", str(tmp_path / strategy), "--strategy", strategy]
            )
            assert code == 0

    def test_unknown_strategy_is_usage_error(self, small_csv, tmp_path):
        code = main(
            ["convert", str(small_csv), "--label-column", "label",
             "--out-dir", str(tmp_path / "o"), "--strategy", "mosaic"]
        )
        assert code == 2

    def test_bad_ratio_is_usage_error(self, small_csv, tmp_path):
        code = main(
            ["convert", str(small_csv), "--label-column", "label",
             "--out-dir", str(tmp_path / "o"), "--ratio", "1.5"]
        )
        assert code == 2

    def test_missing_file_is_data_error(self, tmp_path, capsys):
        code = main(["convert", str(tmp_path / "ghost.csv"), "--label-column", "x", "--out-dir", str(tmp_path / "o")])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_label_column_is_data_error(self, small_csv, tmp_path, capsys):
        code = main(["convert", str(small_csv), "--label-column", "nope", "--out-dir", str(tmp_path / "o")])
        assert code == 1
        assert "nope" in capsys.readouterr().err

    def test_corr_scope_full_changes_nothing_structural(self, small_csv, tmp_path):
        code = main(
            ["convert", str(small_csv), "--label-column", "label",
             "--out-dir", str(tmp_path / "full"), "--corr-scope", "full"]
        )
        assert code == 0
        assert len(list((tmp_path / "full").glob("*.vfpt"))) == 10


class TestAnalyze:
    def test_table_and_exit(self, capsys):
        assert main(["analyze", "--dims", "3x3"]) == 0
        stdout = capsys.readouterr().out
        assert "zpos2" in stdout
        assert "distancing" in stdout
        # both 3x3 totals are 25 and closed/brute agree
        assert stdout.count("25") >= 4
        assert "MISMATCH" not in stdout

    def test_attrs_derives_dims(self, capsys):
        assert main(["analyze", "--attrs", "4"]) == 0
        stdout = capsys.readouterr().out
        assert "k=4 -> grid 2x2" in stdout

    def test_unsupported_dims_with_explicit_strategy(self, capsys):
        code = main(["analyze", "--dims", "1x1", "--strategy", "zpos1"])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_unsupported_pairs_skipped_when_defaulted(self, capsys):
        # 2x2 cannot host the unpadded variant, but the other three still print.
        assert main(["analyze", "--dims", "2x2"]) == 0
        stdout = capsys.readouterr().out
        assert "skipped none" in stdout
        assert "zpos1" in stdout

    def test_csv_output(self, tmp_path):
        out = tmp_path / "budget.csv"
        assert main(["analyze", "--dims", "3x3", "--csv", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert len(rows) == 8  # 4 strategies x closed+brute
        assert all(row["agrees"] == "true" for row in rows)

    def test_dims_flag_rejects_garbage(self):
        assert main(["analyze", "--dims", "3by3"]) == 2


class TestScores:
    def test_csv_shape(self, small_csv, capsys):
        assert main(["scores", str(small_csv), "--label-column", "label"]) == 0
        rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
        assert len(rows) == 4
        assert set(rows[0]) == {"column_name", "score", "rank"}
        ranks = [int(row["rank"]) for row in rows]
        assert ranks == [0, 1, 2, 3]
        scores = [float(row["score"]) for row in rows]
        assert scores == sorted(scores)  # ascending default

    def test_descending(self, small_csv, capsys):
        assert main(["scores", str(small_csv), "--label-column", "label", "--direction", "descending"]) == 0
        scores = [float(r["score"]) for r in csv.DictReader(capsys.readouterr().out.splitlines())]
        assert scores == sorted(scores, reverse=True)

    def test_out_file(self, small_csv, tmp_path):
        out = tmp_path / "scores.csv"
        assert main(["scores", str(small_csv), "--label-column", "label", "--out", str(out)]) == 0
        assert out.read_text(encoding="utf-8").startswith("column_name,score,rank")


class TestLayoutCmd:
    def test_json_report(self, small_csv, capsys):
        assert main(["layout", str(small_csv), "--label-column", "label"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert len(report) == 4
        row = report[0]
        assert set(row) == {"rank", "column_name", "score", "grid_row", "grid_col", "pixel_row", "pixel_col"}
        assert (row["pixel_row"], row["pixel_col"]) == (1, 1)  # distancing default

    def test_csv_report(self, small_csv, capsys):
        assert main(["layout", str(small_csv), "--label-column", "label", "--format", "csv"]) == 0
        rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
        assert len(rows) == 4


class TestInspect:
    def test_prints_table_and_mask(self, small_csv, tmp_path, capsys):
        out = tmp_path / "out"
        assert main(["convert", str(small_csv), "--label-column", "label", "--out-dir", str(out)]) == 0
        capsys.readouterr()
        assert main(["inspect", str(out), "--sample-id", "0"]) == 0
        stdout = capsys.readouterr().out
        assert "sample 0:" in stdout
        assert "shape=3x5x5" in stdout
        assert "rank" in stdout
        # distancing occupancy for a 2x2 grid: features at odd coordinates
        assert "  .#.#." in stdout
        assert stdout.count("#") == 4

    def test_missing_sample_id(self, small_csv, tmp_path, capsys):
        out = tmp_path / "out"
        main(["convert", str(small_csv), "--label-column", "label", "--out-dir", str(out)])
        capsys.readouterr()
        assert main(["inspect", str(out), "--sample-id", "404"]) == 1

    def test_missing_manifest(self, tmp_path):
        assert main(["inspect", str(tmp_path / "void"), "--sample-id", "0"]) == 1


class TestHelp:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "convert" in capsys.readouterr().out

    def test_subcommand_help_lists_defaults(self, capsys):
        assert main(["convert", "--help"]) == 0
        stdout = capsys.readouterr().out
        for token in ("distancing", "0.8", "1000", "ascending", "train"):
            assert token in stdout

    def test_no_command_is_usage_error(self):
        assert main([]) == 2
