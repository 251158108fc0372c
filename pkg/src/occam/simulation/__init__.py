"""Monte Carlo experiments and corpus analysis.

This module provides the sweep configuration and presets, the seeded
replicate runner, the simulation experiments and the analysis of graph
files, all emitting CSV tables.
"""

from occam.simulation.analysis import (
    AnalysisResult,
    FileAnalysis,
    analyze,
    build_candidates,
    run_analysis,
)
from occam.simulation.config import (
    PRESETS,
    Experiment,
    Preset,
    SweepConfig,
    build_sweep_config,
    load_sweep_config,
    parse_grid,
    parse_int_list,
    parse_partitions,
)
from occam.simulation.experiments import (
    EXPERIMENTS,
    run_bayes_factor_sweep,
    run_bound_surface,
    run_er_sweep,
    run_experiment,
    run_ie_histogram,
    run_sbm_heatmap,
)
from occam.simulation.output import ResultTable, format_value
from occam.simulation.runner import ReplicateRunner

__all__ = [
    # Config
    "PRESETS",
    "Experiment",
    "Preset",
    "SweepConfig",
    "build_sweep_config",
    "load_sweep_config",
    "parse_grid",
    "parse_int_list",
    "parse_partitions",
    # Execution
    "ReplicateRunner",
    "ResultTable",
    "format_value",
    # Experiments
    "EXPERIMENTS",
    "run_bayes_factor_sweep",
    "run_bound_surface",
    "run_er_sweep",
    "run_experiment",
    "run_ie_histogram",
    "run_sbm_heatmap",
    # Analysis
    "AnalysisResult",
    "FileAnalysis",
    "analyze",
    "build_candidates",
    "run_analysis",
]
