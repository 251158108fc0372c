"""CLI entry point for Occam.

This module defines the command-line interface using Click. Data (CSV and
JSON) goes to stdout or the requested files; logs go to stderr.
"""

import json
import logging
from pathlib import Path
from typing import Any

import click
from dotenv import load_dotenv

from occam import __version__
from occam.core.exceptions import (
    ConfigurationError,
    DomainError,
    GraphParseError,
    ModelEvaluationError,
    OccamError,
)
from occam.core.logging import get_logger, set_console_level
from occam.core.settings import Settings
from occam.simulation.analysis import (
    AnalysisResult,
    analyze,
    build_candidates,
    run_analysis,
)
from occam.simulation.config import (
    Experiment,
    Preset,
    build_sweep_config,
    load_sweep_config,
    parse_grid,
    parse_int_list,
)
from occam.simulation.experiments import run_bound_surface, run_experiment
from occam.simulation.output import ResultTable

logger = get_logger("occam.cli")

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


def exit_code_for(error: Exception) -> int:
    """Process exit code of a failure.

    Usage and configuration errors give 1, bad input data 2 and numeric
    failures 3.
    """
    if isinstance(error, ModelEvaluationError):
        return exit_code_for(error.cause)
    if isinstance(error, click.UsageError | ConfigurationError):
        return EXIT_USAGE
    if isinstance(error, GraphParseError | DomainError):
        return EXIT_DATA
    return EXIT_NUMERIC


class CommandFailed(click.ClickException):
    """A library error reported with its mapped exit code."""

    def __init__(self, error: OccamError) -> None:
        super().__init__(str(error))
        self.exit_code = exit_code_for(error)


class OccamGroup(click.Group):
    """Click group mapping usage errors and library errors to exit codes."""

    def make_context(
        self,
        info_name: str | None,
        args: list[str],
        parent: click.Context | None = None,
        **extra: Any,
    ) -> click.Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise
        except OccamError as e:
            raise CommandFailed(e) from e


def _grid(
    ctx: click.Context,  # noqa: ARG001
    param: click.Parameter,  # noqa: ARG001
    value: str | None,
) -> tuple[float, ...] | None:
    if value is None:
        return None
    try:
        return parse_grid(value)
    except ConfigurationError as e:
        raise click.BadParameter(str(e)) from e


def _int_list(
    ctx: click.Context,  # noqa: ARG001
    param: click.Parameter,  # noqa: ARG001
    value: str | None,
) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return parse_int_list(value)
    except ConfigurationError as e:
        raise click.BadParameter(str(e)) from e


def _partition(token: str) -> tuple[str, Path]:
    name, sep, path = token.partition("=")
    if sep:
        return name.strip(), Path(path.strip())
    return Path(token).stem, Path(token)


def _emit(table: ResultTable, out: Path | None) -> None:
    if out is None:
        click.echo(table.to_csv(), nl=False)
    else:
        table.write(out)


@click.group(cls=OccamGroup)
@click.version_option(version=__version__, prog_name="occam")
@click.option(
    "-v", "--verbose", is_flag=True, help="Enable verbose output (DEBUG level)"
)
@click.option("-q", "--quiet", is_flag=True, help="Quiet mode (WARNING level only)")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, quiet: bool) -> None:
    """Occam CLI.

    Bayesian evidence model selection among Erdos-Renyi, independent-edge
    and rank-1 stochastic blockmodel random graphs.
    """
    load_dotenv()

    if verbose:
        console_level = logging.DEBUG
    elif quiet:
        console_level = logging.WARNING
    else:
        console_level = logging.INFO
    set_console_level(console_level)

    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet


@cli.command("select")
@click.argument(
    "files", nargs=-1, required=True, type=click.Path(dir_okay=False, path_type=Path)
)
@click.option(
    "--k",
    "k_values",
    default="2",
    show_default=True,
    callback=_int_list,
    help="Block counts of the estimated-membership blockmodels (e.g. 2,4)",
)
@click.option(
    "--membership",
    "-m",
    multiple=True,
    help="Known partition as [NAME=]FILE, one label per line (repeatable)",
)
@click.option(
    "--loops/--no-loops",
    default=True,
    show_default=True,
    help="Keep self-loops; --no-loops counts only the C(n_v, 2) vertex pairs",
)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Five-number summary CSV (default: not written)",
)
@click.option(
    "--json-out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="JSON report file (default: stdout)",
)
def select_command(
    files: tuple[Path, ...],
    k_values: tuple[int, ...],
    membership: tuple[str, ...],
    loops: bool,
    out: Path | None,
    json_out: Path | None,
) -> None:
    """Select the model with the largest evidence for each graph file.

    Files are edge lists (``n_v N loops 0|1`` header then ``i j`` lines)
    or dense 0/1 CSV matrices. Unreadable files are reported and skipped.

    Examples:
        occam select graph.txt
        occam select scans/*.csv --no-loops --k 4 -m hemisphere=lr.txt
        occam select a.txt b.txt --out summary.csv --json-out reports.json
    """
    partitions = dict(_partition(token) for token in membership)
    candidates = build_candidates(k_values, partitions)
    result = analyze(files, candidates, loops_allowed=loops)
    _finish_analysis(result, out, json_out)


def _finish_analysis(
    result: AnalysisResult, out: Path | None, json_out: Path | None
) -> None:
    if not result.files:
        raise CommandFailed(next(iter(result.failures.values())))

    content = json.dumps(result.to_json_dict(), indent=2)
    if json_out is None:
        click.echo(content)
    else:
        json_out.parent.mkdir(parents=True, exist_ok=True)
        json_out.write_text(content + "\n", encoding="utf-8")
        logger.info(f"Wrote reports to {json_out}")
    if out is not None:
        result.summary().write(out)


@cli.command("simulate")
@click.argument(
    "experiment", type=click.Choice([e.value for e in Experiment]), required=False
)
@click.option(
    "--config",
    "-c",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Flat key=value sweep config",
)
@click.option(
    "--preset",
    type=click.Choice([p.value for p in Preset]),
    default=None,
    help="Base values (default: the config's preset, else desk)",
)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Output CSV (default: config output, else stdout)",
)
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Base seed")
@click.option(
    "--threads",
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads (default: OCCAM_THREADS, else the config)",
)
def simulate(
    experiment: str | None,
    config_path: Path | None,
    preset: str | None,
    out: Path | None,
    seed: int | None,
    threads: int | None,
) -> None:
    """Run a Monte Carlo experiment and write its CSV.

    EXPERIMENT is one of er_sweep, bayes_factor_sweep, sbm_heatmap,
    ie_histogram, bound_surface or analyze; it may also come from the
    config file's ``experiment`` key.

    Examples:
        occam simulate bayes_factor_sweep --seed 7 --out bf.csv
        occam simulate er_sweep --preset full --threads 8 -o er.csv
        occam simulate --config heatmap.cfg
    """
    threads = threads or Settings.from_env().threads
    config = load_sweep_config(
        config_path,
        experiment,
        preset,
        seed=seed,
        threads=threads,
        output=out,
    )

    if config.experiment is Experiment.ANALYZE:
        if not config.graphs:
            raise click.UsageError("analyze needs graphs=PATH,... in the config")
        result = run_analysis(config)
        _finish_analysis(result, None, None)
        if config.output is not None:
            result.summary().write(config.output)
        return

    table = run_experiment(config)
    _emit(table, config.output)


@cli.command("bound")
@click.option(
    "--nv", "n_v", type=click.IntRange(min=2), required=True, help="Vertex count"
)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Output CSV (default: stdout)",
)
@click.option(
    "--loops/--no-loops",
    default=True,
    show_default=True,
    help="Count the n_v diagonal pairs as possible edges",
)
@click.option("--eps-grid", callback=_grid, help="Slack grid, e.g. 0.05:0.95:0.05")
@click.option("--delta-grid", callback=_grid, help="Concentration grid, e.g. 0.1,0.5")
def bound(
    n_v: int,
    out: Path | None,
    loops: bool,
    eps_grid: tuple[float, ...] | None,
    delta_grid: tuple[float, ...] | None,
) -> None:
    """Tabulate the IE selection lower bound over (eps, delta).

    Cells where eps is too small for the graph size are left empty.

    Examples:
        occam bound --nv 100
        occam bound --nv 100 --eps-grid 0.1 --delta-grid 0.5 -o bound.csv
    """
    overrides = {"eps_grid": eps_grid, "delta_grid": delta_grid}
    config = build_sweep_config(
        Experiment.BOUND_SURFACE,
        n_v=(n_v,),
        loops_allowed=loops,
        **{k: v for k, v in overrides.items() if v is not None},
    )
    _emit(run_bound_surface(config), out)


if __name__ == "__main__":
    cli()
