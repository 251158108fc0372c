"""Configuration for Monte Carlo sweeps.

This module defines the sweep configuration model, the desk and full
presets and the loader for flat ``key=value`` config files. List values
are comma-separated; ``start:stop:step`` denotes an inclusive range.
"""

from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from occam.core.exceptions import ConfigurationError
from occam.core.logging import get_logger
from occam.core.settings import parse_bool

logger = get_logger("occam.simulation.config")

RANGE_DECIMALS = 12


class Experiment(str, Enum):
    """Available sweep experiments."""

    ER_SWEEP = "er_sweep"
    BAYES_FACTOR_SWEEP = "bayes_factor_sweep"
    SBM_HEATMAP = "sbm_heatmap"
    IE_HISTOGRAM = "ie_histogram"
    BOUND_SURFACE = "bound_surface"
    ANALYZE = "analyze"


class Preset(str, Enum):
    """Scale of a sweep."""

    DESK = "desk"
    FULL = "full"


def parse_grid(raw: str) -> tuple[float, ...]:
    """Parse ``0.1,0.2`` or ``0.30:0.70:0.01`` (inclusive) into floats.

    Raises:
        ConfigurationError: If a token is malformed or a range is empty.
    """
    values: list[float] = []
    for token in (t.strip() for t in raw.split(",")):
        if not token:
            continue
        try:
            if ":" in token:
                start, stop, step = (float(part) for part in token.split(":"))
                if step <= 0 or stop < start:
                    raise ConfigurationError(f"empty range {token!r}")
                count = int(np.floor((stop - start) / step + 1e-9)) + 1
                values.extend(
                    round(start + i * step, RANGE_DECIMALS) for i in range(count)
                )
            else:
                values.append(float(token))
        except ConfigurationError:
            raise
        except ValueError as e:
            raise ConfigurationError(f"invalid grid value {token!r}: {e}") from e
    return tuple(values)


def parse_int_list(raw: str) -> tuple[int, ...]:
    """Parse comma-separated integers, ranges allowed.

    Raises:
        ConfigurationError: If a value is not an integer.
    """
    values = parse_grid(raw)
    if any(v != int(v) for v in values):
        raise ConfigurationError(f"expected integers, got {raw!r}")
    return tuple(int(v) for v in values)


def parse_partitions(raw: str) -> dict[str, Path]:
    """Parse ``name=path`` pairs separated by commas."""
    partitions: dict[str, Path] = {}
    for token in (t.strip() for t in raw.split(",")):
        if not token:
            continue
        name, sep, path = token.partition("=")
        if not sep or not name.strip() or not path.strip():
            raise ConfigurationError(f"partition must be NAME=PATH, got {token!r}")
        partitions[name.strip()] = Path(path.strip())
    return partitions


DEFAULT_P_GRID = parse_grid("0.30:0.70:0.01")
DEFAULT_X_GRID = parse_grid("0.05:0.95:0.05")
DEFAULT_EPS_GRID = parse_grid("0.05:0.95:0.05")
DEFAULT_DELTA_GRID = parse_grid("0.05:0.95:0.05")


class SweepConfig(BaseModel):
    """Parameters of one sweep experiment.

    Attributes:
        experiment: Experiment to run.
        n_v: Graph sizes.
        p_grid: ER edge probabilities.
        x1_grid: First blockmodel latent position.
        x2_grid: Second blockmodel latent position.
        eps_grid: Slack values of the IE selection bound.
        delta_grid: Concentration values of the IE selection bound.
        replicates: Graphs per grid cell (inner replicates for
            ``ie_histogram``).
        matrices: Probability matrices drawn by ``ie_histogram``.
        k_values: Block counts of the blockmodel candidates.
        seed: Base seed; replicate seeds are ``seed XOR index``.
        loops_allowed: Self-loop convention of sampled graphs.
        output: CSV destination, stdout when None.
        threads: Worker threads for replicates.
        graphs: Graph files for ``analyze``.
        partitions: Named membership files for ``analyze``.
    """

    model_config = ConfigDict(frozen=True)

    experiment: Experiment
    n_v: tuple[int, ...] = Field(default=(50, 150, 250, 500), min_length=1)
    p_grid: tuple[float, ...] = Field(default=DEFAULT_P_GRID, min_length=1)
    x1_grid: tuple[float, ...] = Field(default=DEFAULT_X_GRID, min_length=1)
    x2_grid: tuple[float, ...] = Field(default=DEFAULT_X_GRID, min_length=1)
    eps_grid: tuple[float, ...] = Field(default=DEFAULT_EPS_GRID, min_length=1)
    delta_grid: tuple[float, ...] = Field(default=DEFAULT_DELTA_GRID, min_length=1)
    replicates: int = Field(default=300, ge=1)
    matrices: int = Field(default=20, ge=1)
    k_values: tuple[int, ...] = Field(default=(2,), min_length=1)
    seed: int = Field(default=0, ge=0)
    loops_allowed: bool = True
    output: Path | None = None
    threads: int = Field(default=1, ge=1)
    graphs: tuple[Path, ...] = ()
    partitions: dict[str, Path] = Field(default_factory=dict)

    @field_validator("n_v", "k_values")
    @classmethod
    def check_positive(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        """Sizes and block counts are positive."""
        if any(value < 1 for value in v):
            raise ValueError("values must be at least 1")
        return v

    @field_validator("p_grid", "x1_grid", "x2_grid")
    @classmethod
    def check_probabilities(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Grid probabilities lie in (0, 1)."""
        if any(not 0.0 < value < 1.0 for value in v):
            raise ValueError("grid values must lie in (0, 1)")
        return v

    @field_validator("eps_grid", "delta_grid")
    @classmethod
    def check_bound_grid(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        """Bound parameters are positive."""
        if any(value <= 0.0 for value in v):
            raise ValueError("bound parameters must be positive")
        return v


PRESETS: dict[Preset, dict[Experiment, dict[str, Any]]] = {
    Preset.DESK: {
        Experiment.BAYES_FACTOR_SWEEP: {"n_v": (50, 150, 250), "replicates": 300},
        Experiment.ER_SWEEP: {
            "n_v": (50, 150),
            "p_grid": parse_grid("0.30:0.70:0.05"),
            "replicates": 100,
        },
        Experiment.SBM_HEATMAP: {
            "n_v": (120,),
            "x1_grid": parse_grid("0.1:0.9:0.1"),
            "x2_grid": parse_grid("0.1:0.9:0.1"),
            "replicates": 20,
        },
        Experiment.IE_HISTOGRAM: {"n_v": (50,), "matrices": 20, "replicates": 200},
        Experiment.BOUND_SURFACE: {"n_v": (100,)},
        Experiment.ANALYZE: {"loops_allowed": False},
    },
    Preset.FULL: {
        Experiment.BAYES_FACTOR_SWEEP: {"n_v": (50, 150, 250, 500), "replicates": 300},
        Experiment.ER_SWEEP: {"n_v": (50, 150, 250), "replicates": 1000},
        Experiment.SBM_HEATMAP: {"n_v": (50, 80, 120, 250), "replicates": 100},
        Experiment.IE_HISTOGRAM: {"n_v": (50,), "matrices": 100, "replicates": 1000},
        Experiment.BOUND_SURFACE: {"n_v": (100,)},
        Experiment.ANALYZE: {"loops_allowed": False, "k_values": (4,)},
    },
}

_PARSERS = {
    "n_v": parse_int_list,
    "p_grid": parse_grid,
    "x1_grid": parse_grid,
    "x2_grid": parse_grid,
    "eps_grid": parse_grid,
    "delta_grid": parse_grid,
    "replicates": int,
    "matrices": int,
    "k_values": parse_int_list,
    "seed": int,
    "loops_allowed": lambda raw: parse_bool(raw, True),
    "output": Path,
    "threads": int,
    "graphs": lambda raw: tuple(Path(p.strip()) for p in raw.split(",") if p.strip()),
    "partitions": parse_partitions,
}
KNOWN_KEYS = frozenset(_PARSERS) | {"experiment", "preset"}


def build_sweep_config(
    experiment: Experiment | str,
    preset: Preset | str = Preset.DESK,
    **overrides: Any,
) -> SweepConfig:
    """Sweep config from a preset with explicit overrides.

    Raises:
        ConfigurationError: If the experiment, preset or a value is invalid.
    """
    try:
        experiment = Experiment(experiment)
        preset = Preset(preset)
    except ValueError as e:
        raise ConfigurationError(str(e)) from e

    values = {**PRESETS[preset][experiment], **overrides}
    try:
        return SweepConfig(experiment=experiment, **values)
    except ValidationError as e:
        raise ConfigurationError(f"invalid sweep configuration: {e}") from e


def load_sweep_config(
    path: Path | str | None = None,
    experiment: Experiment | str | None = None,
    preset: Preset | str | None = None,
    **overrides: Any,
) -> SweepConfig:
    """Load a sweep config file on top of its preset.

    Args:
        path: Flat ``key=value`` file, or None for the preset alone.
        experiment: Experiment, overriding the file's ``experiment`` key.
        preset: Preset, overriding the file's ``preset`` key (desk when
            neither is given).
        **overrides: Values taking precedence over the file (None values
            are ignored).

    Returns:
        The validated config.

    Raises:
        ConfigurationError: If the file has unknown keys or invalid values.
    """
    raw: dict[str, str | None] = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        raw = dict(dotenv_values(path))

    unknown = sorted(set(raw) - KNOWN_KEYS)
    if unknown:
        raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")

    experiment = experiment or raw.get("experiment")
    if not experiment:
        raise ConfigurationError("no experiment given")
    preset = preset or raw.get("preset") or Preset.DESK

    values: dict[str, Any] = {}
    for key, value in raw.items():
        if key in ("experiment", "preset") or value is None:
            continue
        try:
            values[key] = _PARSERS[key](value)
        except ConfigurationError:
            raise
        except ValueError as e:
            raise ConfigurationError(f"invalid value for {key}: {value!r}") from e
    values.update({k: v for k, v in overrides.items() if v is not None})

    config = build_sweep_config(experiment, preset, **values)
    logger.debug(f"Loaded sweep config: {config.experiment.value} ({preset})")
    return config
