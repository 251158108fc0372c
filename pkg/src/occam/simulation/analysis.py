"""Model selection over a corpus of graph files.

This module runs the candidate registry on every file, keeps going past
files that fail to load or evaluate, and aggregates a five-number summary
of the log-evidences per model.
"""

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from occam.core.exceptions import DomainError, OccamError
from occam.core.logging import get_logger
from occam.core.selection.config import SelectionConfig
from occam.core.selection.models import EvidenceReport, ModelSpec
from occam.core.selection.registry import connectome_registry, default_registry
from occam.core.selection.service import ModelSelectionService
from occam.graphs.io import load_graph, load_membership
from occam.simulation.config import Experiment, SweepConfig
from occam.simulation.output import ResultTable

logger = get_logger("occam.simulation.analysis")

SUMMARY_COLUMNS = ("model", "min", "q1", "median", "q3", "max", "wins")


@dataclass(frozen=True)
class FileAnalysis:
    """Selection outcome on one graph file."""

    path: Path
    winner: ModelSpec
    reports: list[EvidenceReport]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "path": str(self.path),
            "winner": self.winner.label,
            "reports": [report.to_json_dict() for report in self.reports],
        }


@dataclass
class AnalysisResult:
    """Outcome of a corpus analysis.

    Attributes:
        candidates: Candidate models, in tie-break order.
        files: Per-file results of the files that were analysed.
        failures: Files that could not be analysed, with the error.
    """

    candidates: list[ModelSpec]
    files: list[FileAnalysis] = field(default_factory=list)
    failures: dict[Path, OccamError] = field(default_factory=dict)

    def wins(self) -> dict[str, int]:
        """Number of files won by each candidate label."""
        counts = {spec.label: 0 for spec in self.candidates}
        for item in self.files:
            counts[item.winner.label] += 1
        return counts

    def summary(self) -> ResultTable:
        """Five-number summary of the log-evidence per candidate.

        Failed evaluations are left out; a candidate with no finite value
        gets empty cells.
        """
        table = ResultTable(columns=SUMMARY_COLUMNS)
        wins = self.wins()
        for position, spec in enumerate(self.candidates):
            values = [
                item.reports[position].log_evidence
                for item in self.files
                if math.isfinite(item.reports[position].log_evidence)
            ]
            if values:
                quantiles = np.percentile(values, [0, 25, 50, 75, 100]).tolist()
            else:
                quantiles = [None] * 5
            table.append(spec.label, *quantiles, wins[spec.label])
        return table

    def to_json_dict(self) -> dict[str, Any]:
        """Per-file reports, failures and the summary as JSON-ready data."""
        summary = self.summary()
        return {
            "files": [item.to_json_dict() for item in self.files],
            "failures": [
                {"path": str(path), "error": str(error)}
                for path, error in self.failures.items()
            ],
            "summary": [dict(zip(summary.columns, row, strict=True)) for row in summary.rows],
        }


def analyze(
    paths: Sequence[Path | str],
    candidates: list[ModelSpec] | None = None,
    loops_allowed: bool = False,
    config: SelectionConfig | None = None,
) -> AnalysisResult:
    """Select a model for every graph file.

    Args:
        paths: Graph files, edge list or dense CSV.
        candidates: Candidate models, the default registry when None.
        loops_allowed: When False the self-loops of every file are
            dropped and only the C(n_v, 2) vertex pairs count.
        config: Numerical settings of the evaluations.

    Returns:
        Per-file results and failures.

    Raises:
        DomainError: If no paths are given.
    """
    if not paths:
        raise DomainError("no graph files given")
    candidates = candidates or default_registry()
    service = ModelSelectionService(config)
    result = AnalysisResult(candidates=candidates)

    for raw in paths:
        path = Path(raw)
        try:
            g = load_graph(path)
            if not loops_allowed:
                g = g.without_loops()
            winner, reports = service.select(g, candidates)
        except OccamError as e:
            logger.error(f"Skipping {path}: {e}")
            result.failures[path] = e
            continue
        logger.info(f"{path.name}: {winner.label}")
        result.files.append(FileAnalysis(path=path, winner=winner, reports=reports))

    logger.info(
        f"Analysed {len(result.files)} of {len(paths)} files "
        f"({len(result.failures)} failed)"
    )
    return result


def build_candidates(
    k_values: Iterable[int],
    partitions: Mapping[str, Path | str] | None = None,
) -> list[ModelSpec]:
    """Candidate registry for an analysis.

    Without named partitions this is the default registry; with them it
    is the connectome registry, one known-membership blockmodel per
    partition file.

    Raises:
        GraphParseError: If a membership file is malformed.
    """
    if not partitions:
        return default_registry(k_values)
    named = {name: load_membership(path) for name, path in partitions.items()}
    return connectome_registry(named, k_values)


def run_analysis(config: SweepConfig) -> AnalysisResult:
    """Analyse the graph files named by an ``analyze`` sweep config."""
    if config.experiment is not Experiment.ANALYZE:
        raise DomainError(f"config is for {config.experiment.value}, not analyze")
    candidates = build_candidates(config.k_values, config.partitions)
    return analyze(config.graphs, candidates, loops_allowed=config.loops_allowed)
