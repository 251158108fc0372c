"""CSV tables produced by the sweeps.

Floats are written with 17 significant digits so that reruns with the
same seed produce byte-identical files.
"""

import csv
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path
from typing import Any

from occam.core.logging import get_logger

logger = get_logger("occam.simulation.output")


def format_value(value: Any) -> str:
    """CSV cell text: 17 significant digits for floats, empty for None."""
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


@dataclass
class ResultTable:
    """A header and rows of experiment output.

    Attributes:
        columns: Column names.
        rows: Row values in column order.
    """

    columns: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)

    def append(self, *values: Any) -> None:
        """Add a row.

        Raises:
            ValueError: If the row length differs from the header.
        """
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list[Any]:
        """Values of one column."""
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def to_csv(self) -> str:
        """Render as CSV text with a header row."""
        buffer = StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        return buffer.getvalue()

    def write(self, path: Path | str) -> Path:
        """Write the CSV to ``path``, creating parent directories."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_csv(), encoding="utf-8")
        logger.info(f"Wrote {len(self.rows)} rows to {path}")
        return path
