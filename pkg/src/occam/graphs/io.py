"""Graph and membership file I/O.

Two graph formats are supported:

* edge list: a header line ``n_v <count> loops <0|1>`` followed by one
  undirected edge ``i j`` per line (1-based, whitespace separated). Blank
  lines and lines starting with ``#`` are ignored.
* dense CSV: n_v rows of n_v comma-separated 0/1 values, optionally
  preceded by a ``# loops <0|1>`` line recording the loop convention.
  Other lines starting with ``#`` are ignored.

Membership files hold one 1-based block label per vertex, one per line.
"""

import csv
import re
from io import StringIO
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from occam.core.exceptions import GraphParseError
from occam.core.logging import get_logger
from occam.graphs.models import BlockAssignment, Graph, GraphFormat

logger = get_logger("occam.graphs.io")

_HEADER = re.compile(r"^n_v\s+(\d+)\s+loops\s+([01])$")
_EDGE = re.compile(r"^(-?\d+)\s+(-?\d+)$")
_CSV_LOOPS = re.compile(r"^#\s*loops\s+([01])$")


def detect_format(path: Path | str) -> GraphFormat:
    """Infer the graph format from the file suffix (``.csv`` or edge list)."""
    return GraphFormat.CSV if Path(path).suffix.lower() == ".csv" else GraphFormat.EDGE_LIST


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((number, line))
    return lines


def parse_edge_list(text: str, path: Path | str | None = None) -> Graph:
    """Parse edge-list text into a graph.

    Args:
        text: File content.
        path: Source path, used in error messages only.

    Returns:
        The parsed graph.

    Raises:
        GraphParseError: On a missing or malformed header, a malformed
            edge line, an out-of-range index or a forbidden self-loop.
    """
    lines = _content_lines(text)
    if not lines:
        raise GraphParseError("missing header 'n_v <count> loops <0|1>'", path=path)

    header_line, header = lines[0]
    match = _HEADER.match(header)
    if match is None:
        raise GraphParseError(
            f"malformed header {header!r}", line=header_line, path=path
        )
    n_v = int(match.group(1))
    loops_allowed = match.group(2) == "1"
    if n_v < 1:
        raise GraphParseError("n_v must be positive", line=header_line, path=path)

    adjacency = np.zeros((n_v, n_v), dtype=np.uint8)
    duplicates = 0
    for number, line in lines[1:]:
        edge = _EDGE.match(line)
        if edge is None:
            raise GraphParseError(f"malformed edge line {line!r}", line=number, path=path)
        i, j = int(edge.group(1)), int(edge.group(2))
        if not (1 <= i <= n_v and 1 <= j <= n_v):
            raise GraphParseError(
                f"vertex index out of range 1..{n_v} in {line!r}",
                line=number,
                path=path,
            )
        if i == j and not loops_allowed:
            raise GraphParseError(
                f"self-loop {line!r} but loops are disabled", line=number, path=path
            )
        if adjacency[i - 1, j - 1]:
            duplicates += 1
        adjacency[i - 1, j - 1] = 1
        adjacency[j - 1, i - 1] = 1

    if duplicates:
        logger.debug(f"Ignored {duplicates} duplicate edge lines in {path or '<text>'}")
    return Graph(n_v=n_v, adjacency=adjacency, loops_allowed=loops_allowed)


def parse_csv(
    text: str,
    loops_allowed: bool | None = None,
    path: Path | str | None = None,
) -> Graph:
    """Parse a dense 0/1 CSV adjacency matrix.

    Args:
        text: File content.
        loops_allowed: Self-loop convention. None takes it from the
            ``# loops`` line, or allows loops when the file has none.
        path: Source path, used in error messages only.

    Returns:
        The parsed graph.

    Raises:
        GraphParseError: On ragged rows, non-binary entries, a non-square
            matrix, an asymmetric entry or a forbidden self-loop.
    """
    file_loops: bool | None = None
    rows: list[list[int]] = []
    for number, record in enumerate(csv.reader(StringIO(text)), start=1):
        if not record or all(not cell.strip() for cell in record):
            continue
        if record[0].lstrip().startswith("#"):
            marker = _CSV_LOOPS.match(",".join(record).strip())
            if marker is not None and not rows:
                file_loops = marker.group(1) == "1"
            continue
        try:
            values = [int(cell.strip()) for cell in record]
        except ValueError:
            raise GraphParseError(
                "entries must be 0 or 1", line=number, path=path
            ) from None
        if any(value not in (0, 1) for value in values):
            raise GraphParseError("entries must be 0 or 1", line=number, path=path)
        if rows and len(values) != len(rows[0]):
            raise GraphParseError(
                f"expected {len(rows[0])} columns, got {len(values)}",
                line=number,
                path=path,
            )
        rows.append(values)

    if not rows:
        raise GraphParseError("empty adjacency matrix", path=path)
    if loops_allowed is None:
        loops_allowed = True if file_loops is None else file_loops
    adjacency = np.array(rows, dtype=np.uint8)
    n_v = adjacency.shape[0]
    if adjacency.shape[1] != n_v:
        raise GraphParseError(
            f"matrix is {adjacency.shape[0]}x{adjacency.shape[1]}, not square",
            path=path,
        )

    asymmetric = np.argwhere(adjacency != adjacency.T)
    if asymmetric.size:
        i, j = (int(v) for v in asymmetric[0])
        raise GraphParseError(
            f"A[{i + 1}][{j + 1}] != A[{j + 1}][{i + 1}]", line=i + 1, path=path
        )
    if not loops_allowed and adjacency.diagonal().any():
        first = int(np.flatnonzero(adjacency.diagonal())[0])
        raise GraphParseError(
            "self-loop present but loops are disabled", line=first + 1, path=path
        )
    return Graph(n_v=n_v, adjacency=adjacency, loops_allowed=loops_allowed)


def load_graph(
    path: Path | str,
    fmt: GraphFormat | str | None = None,
    loops_allowed: bool | None = None,
) -> Graph:
    """Load a graph from disk.

    Args:
        path: File to read.
        fmt: Format, detected from the suffix when None.
        loops_allowed: Loop convention for CSV input, None to use the
            file's ``# loops`` line. Edge lists carry their own convention
            in the header.

    Returns:
        The loaded graph.

    Raises:
        GraphParseError: If the file is malformed or unreadable.
    """
    path = Path(path)
    fmt = GraphFormat(fmt) if fmt is not None else detect_format(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GraphParseError(f"cannot read file: {e}", path=path) from e

    if fmt == GraphFormat.CSV:
        graph = parse_csv(text, loops_allowed=loops_allowed, path=path)
    else:
        graph = parse_edge_list(text, path=path)
    logger.debug(f"Loaded {path}: n_v={graph.n_v}, loops={graph.loops_allowed}")
    return graph


def format_edge_list(g: Graph) -> str:
    """Render a graph in the edge-list format."""
    rows, cols = np.nonzero(np.triu(g.adjacency, k=0 if g.loops_allowed else 1))
    lines = [f"n_v {g.n_v} loops {int(g.loops_allowed)}"]
    lines.extend(f"{i + 1} {j + 1}" for i, j in zip(rows, cols, strict=True))
    return "\n".join(lines) + "\n"


def format_csv(g: Graph) -> str:
    """Render a graph as a dense 0/1 CSV matrix under a ``# loops`` line."""
    buffer = StringIO()
    buffer.write(f"# loops {int(g.loops_allowed)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(g.adjacency.tolist())
    return buffer.getvalue()


def save_graph(
    g: Graph,
    path: Path | str,
    fmt: GraphFormat | str | None = None,
) -> Path:
    """Write a graph to disk.

    Args:
        g: Graph to write.
        path: Destination file; parent directories are created.
        fmt: Format, detected from the suffix when None.

    Returns:
        The written path.
    """
    path = Path(path)
    fmt = GraphFormat(fmt) if fmt is not None else detect_format(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    content = format_csv(g) if fmt == GraphFormat.CSV else format_edge_list(g)
    path.write_text(content, encoding="utf-8")
    return path


def load_membership(path: Path | str, n_v: int | None = None) -> BlockAssignment:
    """Load a block assignment, one 1-based label per line.

    Args:
        path: File to read.
        n_v: Expected vertex count, checked when given.

    Returns:
        The block assignment.

    Raises:
        GraphParseError: On a non-integer label, a wrong label count or an
            invalid partition (unused labels).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GraphParseError(f"cannot read file: {e}", path=path) from e

    labels = []
    for number, line in _content_lines(text):
        if not line.isdigit() or int(line) < 1:
            raise GraphParseError(
                f"block label must be a positive integer, got {line!r}",
                line=number,
                path=path,
            )
        labels.append(int(line))

    if not labels:
        raise GraphParseError("no block labels found", path=path)
    if n_v is not None and len(labels) != n_v:
        raise GraphParseError(
            f"expected {n_v} labels, found {len(labels)}", path=path
        )
    try:
        return BlockAssignment(labels=labels)
    except ValidationError as e:
        raise GraphParseError(
            f"invalid partition: {e.errors()[0]['msg']}", path=path
        ) from e
