"""Monte Carlo experiments on simulated graphs.

Each experiment walks its grid in a fixed order and gives every sampled
graph the seed ``replicate_seed(config.seed, index)``, with ``index``
counting draws across the whole sweep. Replicates of a cell may run on a
thread pool; results are aggregated in index order.
"""

import itertools
from collections.abc import Callable

import numpy as np

from occam.core.evidence.er_ie import ie_selection_conditions, log_bayes_factor_ie_er
from occam.core.evidence.models import EdgeSummary
from occam.core.exceptions import DomainError
from occam.core.logging import get_logger
from occam.core.selection.models import ModelKind
from occam.core.selection.registry import default_registry
from occam.core.selection.service import ModelSelectionService
from occam.graphs.models import BlockAssignment, Graph, possible_edges
from occam.graphs.sampling import (
    replicate_seed,
    sample_er,
    sample_ie,
    sample_sbm_rank1,
    sample_uniform_probabilities,
)
from occam.simulation.config import Experiment, SweepConfig
from occam.simulation.output import ResultTable
from occam.simulation.runner import ReplicateRunner

logger = get_logger("occam.simulation")

MATCHED_PRIOR_MEAN = 0.5


def _check_experiment(config: SweepConfig, expected: Experiment) -> None:
    if config.experiment is not expected:
        raise DomainError(
            f"config is for {config.experiment.value}, not {expected.value}"
        )


def _winning_kinds(
    config: SweepConfig,
    draw: Callable[[int], Graph],
    first_index: int,
) -> list[ModelKind]:
    """Winner kind of each replicate in one grid cell."""
    service = ModelSelectionService()
    candidates = default_registry(config.k_values)

    def replicate(index: int) -> ModelKind:
        winner, _ = service.select(draw(replicate_seed(config.seed, index)), candidates)
        return winner.kind

    runner = ReplicateRunner(config.threads)
    return runner.map(replicate, range(first_index, first_index + config.replicates))


def run_bayes_factor_sweep(config: SweepConfig) -> ResultTable:
    """Fraction of ER(p) graphs on which the matched Bayes factor favors IE.

    Columns: n_v, p, replicates, fraction_ie.
    """
    _check_experiment(config, Experiment.BAYES_FACTOR_SWEEP)
    table = ResultTable(columns=("n_v", "p", "replicates", "fraction_ie"))
    runner = ReplicateRunner(config.threads)

    cells = itertools.product(config.n_v, config.p_grid)
    for cell, (n_v, p) in enumerate(cells):

        def favors_ie(index: int, n_v: int = n_v, p: float = p) -> bool:
            g = sample_er(n_v, p, config.loops_allowed, replicate_seed(config.seed, index))
            es = EdgeSummary.from_graph(g)
            return log_bayes_factor_ie_er(es, MATCHED_PRIOR_MEAN) > 0

        first = cell * config.replicates
        hits = runner.map(favors_ie, range(first, first + config.replicates))
        fraction = sum(hits) / config.replicates
        table.append(n_v, p, config.replicates, fraction)
        logger.info(f"Bayes factor n_v={n_v} p={p:.2f}: IE fraction {fraction:.3f}")
    return table


def run_er_sweep(config: SweepConfig) -> ResultTable:
    """Selection frequencies of ER, blockmodel and IE on ER(p) graphs.

    Columns: n_v, p, replicates, fraction_er, fraction_sbm, fraction_ie.
    """
    _check_experiment(config, Experiment.ER_SWEEP)
    table = ResultTable(
        columns=("n_v", "p", "replicates", "fraction_er", "fraction_sbm", "fraction_ie")
    )

    cells = itertools.product(config.n_v, config.p_grid)
    for cell, (n_v, p) in enumerate(cells):
        kinds = _winning_kinds(
            config,
            lambda seed, n_v=n_v, p=p: sample_er(n_v, p, config.loops_allowed, seed),
            cell * config.replicates,
        )
        er, sbm, ie = (
            kinds.count(kind) / config.replicates
            for kind in (ModelKind.ER, ModelKind.SBM, ModelKind.IE)
        )
        table.append(n_v, p, config.replicates, er, sbm, ie)
        logger.info(f"ER sweep n_v={n_v} p={p:.2f}: ER {er:.3f}, SBM {sbm:.3f}, IE {ie:.3f}")
    return table


def run_sbm_heatmap(config: SweepConfig) -> ResultTable:
    """Fraction of two-block SBM graphs on which a blockmodel is selected.

    Blocks are balanced; every (x1, x2) grid pair is a cell.
    Columns: n_v, x1, x2, replicates, fraction_sbm.
    """
    _check_experiment(config, Experiment.SBM_HEATMAP)
    table = ResultTable(columns=("n_v", "x1", "x2", "replicates", "fraction_sbm"))

    cells = itertools.product(config.n_v, config.x1_grid, config.x2_grid)
    for cell, (n_v, x1, x2) in enumerate(cells):
        assignment = BlockAssignment.balanced(n_v, 2)
        kinds = _winning_kinds(
            config,
            lambda seed, x=(x1, x2), a=assignment: sample_sbm_rank1(
                x, a, config.loops_allowed, seed
            ),
            cell * config.replicates,
        )
        fraction = kinds.count(ModelKind.SBM) / config.replicates
        table.append(n_v, x1, x2, config.replicates, fraction)
        logger.info(f"SBM heatmap n_v={n_v} x=({x1:.2f}, {x2:.2f}): {fraction:.3f}")
    return table


def run_ie_histogram(config: SweepConfig) -> ResultTable:
    """IE success rate on graphs from random uniform probability matrices.

    Matrix ``o`` of a size uses the seed index of its cell; its graphs use
    indices after all matrix indices.
    Columns: n_v, matrix, replicates, success_rate.
    """
    _check_experiment(config, Experiment.IE_HISTOGRAM)
    table = ResultTable(columns=("n_v", "matrix", "replicates", "success_rate"))

    cells = list(itertools.product(config.n_v, range(config.matrices)))
    for cell, (n_v, matrix) in enumerate(cells):
        probabilities = sample_uniform_probabilities(
            n_v, replicate_seed(config.seed, cell)
        )
        kinds = _winning_kinds(
            config,
            lambda seed, p=probabilities: sample_ie(p, config.loops_allowed, seed),
            len(cells) + cell * config.replicates,
        )
        rate = kinds.count(ModelKind.IE) / config.replicates
        table.append(n_v, matrix + 1, config.replicates, rate)
        logger.info(f"IE histogram n_v={n_v} matrix {matrix + 1}: success {rate:.3f}")

    rates = np.array(table.column("success_rate"))
    logger.info(f"IE success rate: mean {rates.mean():.4f}, min {rates.min():.4f}")
    return table


def run_bound_surface(config: SweepConfig) -> ResultTable:
    """IE selection lower bound over the (eps, delta) grid.

    Cells violating the bound's preconditions are left empty.
    Columns: n_v, n, eps, delta, lower_bound, min_edge_probability.
    """
    _check_experiment(config, Experiment.BOUND_SURFACE)
    table = ResultTable(
        columns=("n_v", "n", "eps", "delta", "lower_bound", "min_edge_probability")
    )
    for n_v in config.n_v:
        n = possible_edges(n_v, config.loops_allowed)
        for eps, delta in itertools.product(config.eps_grid, config.delta_grid):
            try:
                conditions = ie_selection_conditions(n, eps, delta)
            except DomainError as e:
                logger.debug(f"Bound undefined at eps={eps}, delta={delta}: {e}")
                table.append(n_v, n, eps, delta, None, None)
            else:
                table.append(
                    n_v,
                    n,
                    eps,
                    delta,
                    conditions.lower_bound,
                    conditions.min_edge_probability,
                )
    return table


EXPERIMENTS: dict[Experiment, Callable[[SweepConfig], ResultTable]] = {
    Experiment.BAYES_FACTOR_SWEEP: run_bayes_factor_sweep,
    Experiment.ER_SWEEP: run_er_sweep,
    Experiment.SBM_HEATMAP: run_sbm_heatmap,
    Experiment.IE_HISTOGRAM: run_ie_histogram,
    Experiment.BOUND_SURFACE: run_bound_surface,
}


def run_experiment(config: SweepConfig) -> ResultTable:
    """Run the simulation experiment named by the config.

    Raises:
        DomainError: For ``analyze``, which runs on files instead.
    """
    if config.experiment not in EXPERIMENTS:
        raise DomainError(f"{config.experiment.value} is not a simulation experiment")
    logger.info(f"Running {config.experiment.value} with seed {config.seed}")
    return EXPERIMENTS[config.experiment](config)
