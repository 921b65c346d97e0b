"""Tests for the command-line interface."""

import csv
import json
from pathlib import Path

import pytest

from src.cli import build_parser, main

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

GRAPHS = DATA_DIR / "graphs"
SCENARIOS = DATA_DIR / "scenarios"


def _run(capsys, *argv):
    """Run the CLI quietly and return (exit code, parsed stdout, stderr)."""
    code = main(["--log-level", "WARNING", *argv])
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def _last_json_line(text):
    lines = [line for line in text.splitlines() if line.strip()]
    return json.loads(lines[-1])


class TestParser:
    """Test suite for argument parsing."""

    def test_subcommands(self):
        """Test every subcommand is registered."""
        parser = build_parser()
        args = parser.parse_args(["bounds", "--n", "3", "--m", "10"])

        assert args.command == "bounds"
        assert args.delta is None

    def test_missing_required_flag(self, capsys):
        """Test a usage error exits 2 with a JSON diagnostic on stderr."""
        with pytest.raises(SystemExit) as exc_info:
            main(["bounds", "--n", "4"])

        assert exc_info.value.code == 2
        diagnostic = _last_json_line(capsys.readouterr().err)
        assert diagnostic["type"] == "UsageError"
        assert "--m" in diagnostic["error"]

    def test_unknown_subcommand(self, capsys):
        """Test an unknown subcommand is a usage error."""
        with pytest.raises(SystemExit) as exc_info:
            main(["teleport"])

        assert exc_info.value.code == 2

    def test_invalid_config_file(self, capsys, tmp_path):
        """Test a configuration that fails validation exits 2 before running."""
        path = tmp_path / "config.yaml"
        path.write_text("protocol:\n  alpha: 2.0\n", encoding="utf-8")

        code, report, err = _run(capsys, "--config", str(path), "bounds", "--n", "2", "--delta", "0.01", "--m", "10")

        assert code == 2
        assert report is None
        diagnostic = _last_json_line(err)
        assert diagnostic["type"] == "ConfigurationError"
        assert any("protocol.alpha" in e for e in diagnostic["details"]["errors"])

    @pytest.mark.parametrize(
        ("flags", "field"),
        [(["--seed", "-1"], "seed"), (["--alpha", "1.5"], "alpha"), (["--beta", "0"], "beta")],
    )
    def test_invalid_run_parameters(self, capsys, flags, field):
        """Test out-of-range seed, alpha and beta exit 2 with a diagnostic naming the field."""
        code, report, err = _run(capsys, "bell-test", "--honest", "--m", "5", *flags)

        assert code == 2
        assert report is None
        diagnostic = _last_json_line(err)
        assert diagnostic["type"] == "ValidationError"
        assert [e["loc"] for e in diagnostic["details"]["errors"]] == [[field]]


class TestBounds:
    """Test suite for the bounds subcommand."""

    def test_explicit_delta(self, capsys):
        """Test the three bounds at n=4, delta=0.01, alpha=0.05, m=100."""
        code, report, _ = _run(capsys, "bounds", "--n", "4", "--delta", "0.01", "--m", "100",
                               "--alpha", "0.05", "--s", "4", "--no-timestamp")

        assert code == 0
        result = report["report"]
        assert result["povm_bound"] == pytest.approx(0.32)
        assert result["state_error_bound"] == pytest.approx(0.2415)
        assert result["incorrect_accept_bound"] == pytest.approx(0.5615)
        assert result["vacuous"] is False

    def test_derived_delta(self, capsys):
        """Test delta comes from c2 (log n / m)^(1/4) when omitted."""
        code, report, _ = _run(capsys, "bounds", "--n", "9", "--m", "10000", "--c2", "1.0", "--no-timestamp")

        assert code == 0
        assert report["report"]["delta"] == pytest.approx(0.1218, abs=1e-4)
        assert report["report"]["vacuous"] is True

    def test_envelope(self, capsys):
        """Test the report carries schema version, command, versions and a timestamp."""
        _, report, _ = _run(capsys, "bounds", "--n", "2", "--delta", "0.01", "--m", "10")

        assert report["schema_version"] == 1
        assert report["command"] == "bounds"
        assert "numpy" in report["versions"]
        assert "timestamp" in report

    def test_no_timestamp_is_reproducible(self, capsys):
        """Test two runs without a timestamp print identical bytes."""
        argv = ["--log-level", "WARNING", "bounds", "--n", "2", "--delta", "0.01", "--m", "10", "--no-timestamp"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out

        assert first == second
        assert "timestamp" not in json.loads(first)

    def test_invalid_value_exits_2(self, capsys):
        """Test a domain error is reported as JSON with its type."""
        code, report, err = _run(capsys, "bounds", "--n", "2", "--delta", "-1", "--m", "10")

        assert code == 2
        assert report is None
        diagnostic = _last_json_line(err)
        assert diagnostic["type"] == "ValidationError"
        assert diagnostic["details"]["delta"] == -1.0

    def test_out_file(self, capsys, tmp_path):
        """Test --out writes the report to a file instead of stdout."""
        target = tmp_path / "reports" / "bounds.json"

        code, report, _ = _run(capsys, "bounds", "--n", "2", "--delta", "0.01", "--m", "10", "--out", str(target))

        assert code == 0
        assert report is None
        assert json.loads(target.read_text())["command"] == "bounds"


class TestBellTest:
    """Test suite for the bell-test subcommand."""

    def test_honest_passes_with_extraction(self, capsys):
        """Test the honest pair passes and the extraction chain holds."""
        code, report, _ = _run(capsys, "bell-test", "--honest", "--m", "50", "--c1", "20",
                               "--seed", "3", "--extract", "--no-timestamp")

        assert code == 0
        assert report["report"]["passed"]
        assert report["extraction"]["all_hold"]
        assert report["parameters"]["c1"] == 20.0

    def test_product_fails(self, capsys):
        """Test the product state fails and exits 1."""
        code, report, _ = _run(capsys, "bell-test", "--device", "product", "--m", "50", "--c1", "20")

        assert code == 1
        assert not report["report"]["passed"]


class TestGraphTest:
    """Test suite for the graph-test subcommand."""

    def test_honest_with_site_table(self, capsys, tmp_path):
        """Test an honest run exits 0 and writes the per-site CSV."""
        table = tmp_path / "sites.csv"

        code, report, _ = _run(capsys, "graph-test", "--graph", str(GRAPHS / "path3.json"), "--m", "2",
                               "--c1", "10", "--csv", str(table), "--no-timestamp")

        assert code == 0
        assert report["report"]["copies_consumed"] == 53
        assert "precision" in report
        with open(table, encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 3

    def test_z_corrupt_fails(self, capsys):
        """Test a corrupted site exits 1 with no precision block."""
        code, report, _ = _run(capsys, "graph-test", "--graph", str(GRAPHS / "triangle.json"), "--m", "2",
                               "--c1", "10", "--adversary", "z-corrupt", "--site", "1")

        assert code == 1
        assert "precision" not in report

    def test_missing_graph_file(self, capsys, tmp_path):
        """Test an unreadable graph file exits 2."""
        code, _, err = _run(capsys, "graph-test", "--graph", str(tmp_path / "none.json"), "--m", "2")

        assert code == 2
        assert _last_json_line(err)["type"] == "ValidationError"


class TestDelegate:
    """Test suite for the delegate subcommand."""

    def test_flags_run_with_transcript(self, capsys, tmp_path):
        """Test an honest teleport run from flags writes its transcript."""
        transcript = tmp_path / "transcript.jsonl"

        code, report, _ = _run(capsys, "delegate", "--graph", str(GRAPHS / "triangle.json"), "--mode", "teleport",
                               "--m", "2", "--c1", "10", "--seed", "5", "--transcript", str(transcript))

        assert code == 0
        assert report["report"]["accepted"]
        lines = transcript.read_text(encoding="utf-8").splitlines()
        assert len(lines) == report["report"]["messages"]

    def test_scenario_file_out_of_order(self, capsys):
        """Test the out-of-order scenario is rejected."""
        code, report, _ = _run(capsys, "delegate", "--scenario-file", str(SCENARIOS / "trusting_out_of_order.json"))

        assert code == 1
        assert report["report"]["aborted_reason"]

    def test_needs_graph_or_scenario(self, capsys):
        """Test delegate without a graph is an input error."""
        code, _, _ = _run(capsys, "delegate")

        assert code == 2


class TestOtherCommands:
    """Test suite for calibrate, schema and oracle."""

    def test_calibrate_table(self, capsys, tmp_path):
        """Test calibrate reports c1 and exports the threshold table."""
        table = tmp_path / "thresholds.csv"

        code, report, _ = _run(capsys, "calibrate", "--beta", "0.9", "--m-values", "100", "400",
                               "--csv", str(table), "--no-timestamp")

        assert code == 0
        assert report["report"]["c1"] > 0
        assert 0.0 < report["report"]["honest_pass_probability"] <= 1.0
        with open(table, encoding="utf-8") as handle:
            assert [int(r["m"]) for r in csv.DictReader(handle)] == [100, 400]

    def test_schema(self, capsys):
        """Test schema prints a JSON schema without the report envelope."""
        code, schema, _ = _run(capsys, "schema", "test4")

        assert code == 0
        assert "properties" in schema
        assert "copies_consumed" in schema["properties"]
        assert "versions" not in schema

    @pytest.mark.slow
    def test_oracle_small(self, capsys):
        """Test the brute-force oracles agree on small inputs."""
        code, report, _ = _run(capsys, "oracle", "--graph", str(GRAPHS / "path3.json"),
                               "--max-n", "6", "--max-m", "20", "--no-timestamp")

        assert code == 0
        assert report["report"]["passed"]
