"""Process-level settings read from the environment.

Values come from ``OCCAM_*`` environment variables, optionally provided
through a ``.env`` file in the working directory.
"""

import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

_TRUE_VALUES = {"1", "true", "yes", "on"}
_FALSE_VALUES = {"0", "false", "no", "off"}


def parse_bool(raw: str | None, default: bool) -> bool:
    """Parse a 1/0, true/false, yes/no or on/off flag; blank gives ``default``."""
    if raw is None or raw.strip() == "":
        return default
    value = raw.strip().lower()
    if value in _TRUE_VALUES:
        return True
    if value in _FALSE_VALUES:
        return False
    raise ValueError(f"Invalid boolean value: {raw!r}")


@dataclass(frozen=True)
class Settings:
    """Environment-driven settings.

    Attributes:
        log_dir: Directory for rotating log files (``OCCAM_LOG_DIR``).
        log_to_file: Attach the file handler (``OCCAM_LOG_TO_FILE``).
        threads: Worker threads for sweeps (``OCCAM_THREADS``), None when
            unset so that the sweep config decides.
    """

    log_dir: Path | None = None
    log_to_file: bool = True
    threads: int | None = None

    def __post_init__(self) -> None:
        """Validate configuration values."""
        if self.threads is not None and self.threads < 1:
            raise ValueError("threads must be at least 1")

    @classmethod
    def from_env(cls, dotenv_path: Path | str | None = None) -> "Settings":
        """Build settings from the environment.

        Args:
            dotenv_path: Optional explicit ``.env`` file. Existing
                environment variables take precedence over the file.

        Returns:
            Parsed settings.

        Raises:
            ValueError: If a variable holds an unparseable value.
        """
        load_dotenv(dotenv_path=dotenv_path, override=False)

        log_dir = os.environ.get("OCCAM_LOG_DIR")
        threads = os.environ.get("OCCAM_THREADS", "").strip()
        try:
            thread_count = int(threads) if threads else None
        except ValueError as e:
            raise ValueError(f"Invalid OCCAM_THREADS value: {threads!r}") from e

        return cls(
            log_dir=Path(log_dir) if log_dir else None,
            log_to_file=parse_bool(os.environ.get("OCCAM_LOG_TO_FILE"), True),
            threads=thread_count,
        )
