"""Tests for CLI commands."""

import csv
import json
from pathlib import Path

import click
import numpy as np
import pytest
from click.testing import CliRunner

from occam import __version__
from occam.cli.main import cli, exit_code_for
from occam.core.exceptions import (
    ConfigurationError,
    DegenerateEmbeddingError,
    GraphParseError,
    ModelEvaluationError,
    NumericError,
    SelectionError,
)
from occam.graphs.io import save_graph
from occam.graphs.models import BlockAssignment, Graph
from occam.graphs.sampling import sample_er, sample_sbm_rank1


@pytest.fixture
def graph_file(tmp_path: Path, rng: np.random.Generator) -> Path:
    """A two-block graph stored as an edge list."""
    g = sample_sbm_rank1((0.2, 0.9), BlockAssignment.balanced(40, 2), seed=rng)
    return save_graph(g, tmp_path / "graph.txt")


def read_csv(path: Path) -> list[dict[str, str]]:
    with path.open(newline="") as f:
        return list(csv.DictReader(f))


def test_cli_help(cli_runner: CliRunner):
    """Test CLI help command."""
    result = cli_runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    assert "Occam CLI" in result.output
    for command in ("select", "simulate", "bound"):
        assert command in result.output


def test_cli_version(cli_runner: CliRunner):
    """Test CLI version command."""
    result = cli_runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


class TestSelectCommand:
    """Tests for the select command."""

    def test_json_report(self, cli_runner: CliRunner, graph_file: Path, tmp_path: Path):
        """Reports follow the JSON schema, one entry per candidate."""
        json_out = tmp_path / "reports.json"
        result = cli_runner.invoke(
            cli, ["-q", "select", str(graph_file), "--json-out", str(json_out)]
        )

        assert result.exit_code == 0
        data = json.loads(json_out.read_text())
        (item,) = data["files"]
        assert item["path"] == str(graph_file)
        assert [r["model"] for r in item["reports"]] == ["ER", "SBM-2", "IE"]
        assert set(item["reports"][1]) == {
            "model",
            "K",
            "log_evidence",
            "method",
            "map_point",
            "membership",
            "warnings",
        }
        assert data["failures"] == []

    def test_stdout(self, cli_runner: CliRunner, graph_file: Path):
        """Without --json-out the report goes to stdout."""
        result = cli_runner.invoke(cli, ["-q", "select", str(graph_file)])
        assert result.exit_code == 0
        assert '"winner"' in result.output

    def test_summary_csv(self, cli_runner: CliRunner, graph_file: Path, tmp_path: Path):
        """--out writes the five-number summary."""
        out = tmp_path / "summary.csv"
        json_out = tmp_path / "reports.json"
        args = ["-q", "select", str(graph_file), "--k", "2,3", "-o", str(out)]
        result = cli_runner.invoke(cli, [*args, "--json-out", str(json_out)])

        assert result.exit_code == 0
        rows = read_csv(out)
        assert [row["model"] for row in rows] == ["ER", "SBM-2", "SBM-3", "IE"]
        assert sum(int(row["wins"]) for row in rows) == 1

    def test_no_loops(self, cli_runner: CliRunner, graph_file: Path, tmp_path: Path):
        """IE evidence counts only the C(n_v, 2) vertex pairs."""
        json_out = tmp_path / "reports.json"
        args = ["-q", "select", str(graph_file), "--no-loops"]
        result = cli_runner.invoke(cli, [*args, "--json-out", str(json_out)])

        assert result.exit_code == 0
        ie = json.loads(json_out.read_text())["files"][0]["reports"][-1]
        assert ie["log_evidence"] == pytest.approx(780 * np.log(0.5))

    def test_named_membership(
        self, cli_runner: CliRunner, graph_file: Path, tmp_path: Path
    ):
        """A membership file adds a known-partition blockmodel."""
        labels = tmp_path / "halves.txt"
        labels.write_text("\n".join(["1"] * 20 + ["2"] * 20) + "\n")
        json_out = tmp_path / "reports.json"
        result = cli_runner.invoke(
            cli,
            [
                "-q",
                "select",
                str(graph_file),
                "-m",
                f"halves={labels}",
                "--json-out",
                str(json_out),
            ],
        )

        assert result.exit_code == 0
        reports = json.loads(json_out.read_text())["files"][0]["reports"]
        assert reports[1]["model"] == "SBM-2 (halves)"
        assert reports[1]["membership"] == [1] * 20 + [2] * 20

    def test_skips_bad_file(
        self, cli_runner: CliRunner, graph_file: Path, tmp_path: Path
    ):
        """A malformed file is reported while the others are analysed."""
        broken = tmp_path / "broken.txt"
        broken.write_text("not a graph\n")
        json_out = tmp_path / "reports.json"
        args = ["-q", "select", str(broken), str(graph_file)]
        result = cli_runner.invoke(cli, [*args, "--json-out", str(json_out)])

        assert result.exit_code == 0
        data = json.loads(json_out.read_text())
        assert len(data["files"]) == 1
        assert data["failures"][0]["path"] == str(broken)

    def test_all_files_fail(self, cli_runner: CliRunner, tmp_path: Path):
        """Data errors exit with code 2."""
        result = cli_runner.invoke(cli, ["select", str(tmp_path / "missing.txt")])
        assert result.exit_code == 2

    def test_missing_argument(self, cli_runner: CliRunner):
        """Usage errors exit with code 1."""
        result = cli_runner.invoke(cli, ["select"])
        assert result.exit_code == 1

    def test_bad_k(self, cli_runner: CliRunner, graph_file: Path):
        result = cli_runner.invoke(cli, ["select", str(graph_file), "--k", "2.5"])
        assert result.exit_code == 1


class TestSimulateCommand:
    """Tests for the simulate command."""

    def test_bayes_factor_sweep(self, cli_runner: CliRunner, tmp_path: Path):
        """Config values, CLI seed and output path combine."""
        config = tmp_path / "sweep.env"
        config.write_text("n_v=20\np_grid=0.4,0.5\nreplicates=10\n")
        out = tmp_path / "bf.csv"
        result = cli_runner.invoke(
            cli,
            [
                "-q",
                "simulate",
                "bayes_factor_sweep",
                "--config",
                str(config),
                "--seed",
                "7",
                "--out",
                str(out),
            ],
        )

        assert result.exit_code == 0
        rows = read_csv(out)
        assert [(row["n_v"], row["p"]) for row in rows] == [
            ("20", "0.40000000000000002"),
            ("20", "0.5"),
        ]
        assert all(row["replicates"] == "10" for row in rows)

    def test_same_seed_same_bytes(self, cli_runner: CliRunner, tmp_path: Path):
        config = tmp_path / "sweep.env"
        config.write_text(
            "experiment=bayes_factor_sweep\nn_v=20\np_grid=0.45\nreplicates=15\n"
        )
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for out, threads in ((first, "1"), (second, "3")):
            args = ["-q", "simulate", "-c", str(config), "--seed", "3"]
            result = cli_runner.invoke(cli, [*args, "--threads", threads, "-o", str(out)])
            assert result.exit_code == 0

        assert first.read_bytes() == second.read_bytes()

    def test_stdout(self, cli_runner: CliRunner):
        result = cli_runner.invoke(cli, ["-q", "simulate", "bound_surface"])
        assert result.exit_code == 0
        assert "n_v,n,eps,delta,lower_bound,min_edge_probability" in result.output

    def test_no_experiment(self, cli_runner: CliRunner):
        result = cli_runner.invoke(cli, ["simulate"])
        assert result.exit_code == 1
        assert "no experiment" in result.output

    def test_unknown_experiment(self, cli_runner: CliRunner):
        result = cli_runner.invoke(cli, ["simulate", "heatmap"])
        assert result.exit_code == 1

    def test_analyze_without_graphs(self, cli_runner: CliRunner):
        result = cli_runner.invoke(cli, ["simulate", "analyze"])
        assert result.exit_code == 1
        assert "graphs" in result.output

    def test_analyze(self, cli_runner: CliRunner, graph_file: Path, tmp_path: Path):
        config = tmp_path / "analyze.env"
        out = tmp_path / "summary.csv"
        config.write_text(f"experiment=analyze\ngraphs={graph_file}\noutput={out}\n")
        result = cli_runner.invoke(cli, ["-q", "simulate", "--config", str(config)])

        assert result.exit_code == 0
        assert [row["model"] for row in read_csv(out)] == ["ER", "SBM-2", "IE"]


class TestBoundCommand:
    """Tests for the bound command."""

    def test_single_cell(self, cli_runner: CliRunner, tmp_path: Path):
        out = tmp_path / "bound.csv"
        args = ["bound", "--nv", "100", "--eps-grid", "0.1", "--delta-grid", "0.5"]
        result = cli_runner.invoke(cli, [*args, "-o", str(out)])

        assert result.exit_code == 0
        (row,) = read_csv(out)
        assert row["n"] == "5050"
        assert float(row["lower_bound"]) == pytest.approx(0.890, abs=1e-3)

    def test_default_grid(self, cli_runner: CliRunner, tmp_path: Path):
        out = tmp_path / "bound.csv"
        result = cli_runner.invoke(
            cli, ["bound", "--nv", "100", "--no-loops", "-o", str(out)]
        )

        assert result.exit_code == 0
        rows = read_csv(out)
        assert len(rows) == 19 * 19
        assert {row["n"] for row in rows} == {"4950"}

    @pytest.mark.parametrize(
        "args",
        [["bound"], ["bound", "--nv", "1"], ["bound", "--nv", "10", "--eps-grid", "x"]],
    )
    def test_usage_errors(self, cli_runner: CliRunner, args: list[str]):
        assert cli_runner.invoke(cli, args).exit_code == 1


class TestExitCodes:
    """Tests for exit_code_for function."""

    @pytest.mark.parametrize(
        "error,code",
        [
            (click.UsageError("bad"), 1),
            (ConfigurationError("bad"), 1),
            (GraphParseError("bad"), 2),
            (DegenerateEmbeddingError("bad"), 2),
            (NumericError("bad"), 3),
            (SelectionError("bad"), 3),
            (ModelEvaluationError("SBM-2", DegenerateEmbeddingError("bad")), 2),
            (ModelEvaluationError("SBM-2", NumericError("bad")), 3),
        ],
    )
    def test_mapping(self, error: Exception, code: int):
        assert exit_code_for(error) == code


def test_selection_matches_library(cli_runner: CliRunner, tmp_path: Path):
    """The CLI winner on a complete graph is ER, as in the library."""
    path = save_graph(Graph.complete(8), tmp_path / "complete.txt")
    json_out = tmp_path / "reports.json"
    result = cli_runner.invoke(
        cli, ["-q", "select", str(path), "--json-out", str(json_out)]
    )

    assert result.exit_code == 0
    assert json.loads(json_out.read_text())["files"][0]["winner"] == "ER"


def test_sampled_graph_csv(
    cli_runner: CliRunner, tmp_path: Path, rng: np.random.Generator
):
    """Dense CSV input is accepted."""
    g = sample_er(15, 0.5, loops_allowed=False, seed=rng)
    path = save_graph(g, tmp_path / "graph.csv")
    json_out = tmp_path / "reports.json"
    result = cli_runner.invoke(
        cli, ["-q", "select", str(path), "--no-loops", "--json-out", str(json_out)]
    )

    assert result.exit_code == 0
    ie = json.loads(json_out.read_text())["files"][0]["reports"][-1]
    assert ie["log_evidence"] == pytest.approx(105 * np.log(0.5))
