"""Tests for the replicate runner and CSV tables."""

import threading
import time
from pathlib import Path

import pytest

from occam.simulation.output import ResultTable, format_value
from occam.simulation.runner import ReplicateRunner


class TestReplicateRunner:
    """Tests for ReplicateRunner."""

    def test_serial(self) -> None:
        assert ReplicateRunner().map(lambda i: i * i, range(5)) == [0, 1, 4, 9, 16]

    def test_threaded_keeps_index_order(self) -> None:
        def slow_first(index: int) -> tuple[int, str]:
            if index == 0:
                time.sleep(0.05)
            return index, threading.current_thread().name

        results = ReplicateRunner(threads=4).map(slow_first, range(8))
        assert [index for index, _ in results] == list(range(8))

    def test_serial_runs_in_calling_thread(self) -> None:
        runner = ReplicateRunner()
        names = runner.map(lambda _: threading.current_thread().name, range(3))
        assert set(names) == {threading.current_thread().name}

    def test_empty(self) -> None:
        assert ReplicateRunner(threads=3).map(lambda i: i, []) == []

    def test_invalid_threads(self) -> None:
        with pytest.raises(ValueError, match="threads"):
            ReplicateRunner(threads=0)


class TestResultTable:
    """Tests for ResultTable and format_value."""

    @pytest.mark.parametrize(
        "value,expected",
        [
            (None, ""),
            (0.1, "0.10000000000000001"),
            (0.5, "0.5"),
            (3, "3"),
            ("ER", "ER"),
        ],
    )
    def test_format_value(self, value: object, expected: str) -> None:
        assert format_value(value) == expected

    def test_csv(self) -> None:
        table = ResultTable(columns=("n_v", "p", "fraction"))
        table.append(50, 0.3, 0.25)
        table.append(50, 0.35, None)

        assert table.to_csv() == (
            "n_v,p,fraction\n"
            "50,0.29999999999999999,0.25\n"
            "50,0.34999999999999998,\n"
        )

    def test_column(self) -> None:
        table = ResultTable(columns=("a", "b"))
        table.append(1, 2)
        table.append(3, 4)
        assert table.column("b") == [2, 4]

    def test_row_length_checked(self) -> None:
        table = ResultTable(columns=("a", "b"))
        with pytest.raises(ValueError, match="2 columns"):
            table.append(1)

    def test_write_creates_parents(self, tmp_path: Path) -> None:
        table = ResultTable(columns=("a",))
        table.append(1)
        path = table.write(tmp_path / "out" / "table.csv")
        assert path.read_text() == "a\n1\n"
