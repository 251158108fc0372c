"""Replicate execution for Monte Carlo sweeps."""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from occam.core.logging import get_logger

logger = get_logger("occam.simulation.runner")

T = TypeVar("T")


class ReplicateRunner:
    """Maps a replicate function over indices, serially or on a thread pool.

    Results always come back in index order, so serial and threaded runs
    aggregate identically.
    """

    def __init__(self, threads: int = 1) -> None:
        """Initialize the runner.

        Args:
            threads: Worker threads; 1 runs in the calling thread.
        """
        if threads < 1:
            raise ValueError("threads must be at least 1")
        self.threads = threads

    def map(self, fn: Callable[[int], T], indices: Iterable[int]) -> list[T]:
        """Apply ``fn`` to every index and return results in order."""
        indices = list(indices)
        if self.threads == 1 or len(indices) < 2:
            return [fn(i) for i in indices]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(fn, indices))
