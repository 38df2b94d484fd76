"""
Parallel Manager module for Orbita.

Runs independent numerical tasks (shell layers, parameter sweeps,
sub-experiments) either inline or on a thread pool. Results always come back
in submission order so downstream reductions are deterministic regardless of
the worker count.
"""

import concurrent.futures
import logging
import os
import time
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar, Union

from orbita.core.config import threads_from_env

logger = logging.getLogger("orbita.core.parallel")

T = TypeVar("T")
R = TypeVar("R")


class ParallelismMode(str, Enum):
    """Enumeration of parallelism modes."""
    SYNC = "sync"
    THREAD = "thread"


class ProgressTracker:
    """
    Track progress of a batch of tasks.

    Logs at debug level per item and exposes a summary for the final info line.
    """

    def __init__(self, total_items: int, description: str = "Processing"):
        self.total = total_items
        self.completed = 0
        self.failed = 0
        self.description = description
        self.start_time = time.perf_counter()
        self.item_times: List[float] = []

    def item_completed(self, success: bool = True, duration: Optional[float] = None) -> None:
        if success:
            self.completed += 1
        else:
            self.failed += 1
        if duration is not None:
            self.item_times.append(duration)
        logger.debug(
            f"{self.description}: {self.completed + self.failed}/{self.total} "
            f"({self.failed} failed)"
        )

    def get_summary(self) -> Dict[str, Any]:
        summary: Dict[str, Any] = {
            "total": self.total,
            "completed": self.completed,
            "failed": self.failed,
            "elapsed_seconds": time.perf_counter() - self.start_time,
        }
        if self.item_times:
            summary["max_item_time"] = max(self.item_times)
        return summary


class ParallelManager:
    """
    Map a function over independent items.

    The worker count is capped by the ORBITA_THREADS environment variable.
    A failure in any item is re-raised after the remaining items finish.
    """

    def __init__(
        self,
        mode: Union[ParallelismMode, str] = ParallelismMode.THREAD,
        max_workers: Optional[int] = None,
    ):
        """
        Initialize the parallel manager.

        Args:
            mode: Parallelization mode
            max_workers: Requested worker count; None uses the environment cap
        """
        if isinstance(mode, str):
            try:
                self.mode = ParallelismMode(mode)
            except ValueError:
                logger.warning(f"Invalid parallelism mode: {mode}, using SYNC")
                self.mode = ParallelismMode.SYNC
        else:
            self.mode = mode

        cap = threads_from_env(default=os.cpu_count() or 1)
        self.max_workers = cap if max_workers is None else max(1, min(max_workers, cap))
        if self.max_workers == 1:
            self.mode = ParallelismMode.SYNC
        logger.debug(
            f"Initialized ParallelManager with mode={self.mode.value}, "
            f"max_workers={self.max_workers}"
        )

    def map(
        self,
        func: Callable[[T], R],
        items: Sequence[T],
        description: str = "Processing",
    ) -> List[R]:
        """
        Apply ``func`` to every item.

        Args:
            func: Function of one item
            items: Items to process
            description: Label used in progress logging

        Returns:
            Results in the same order as ``items``
        """
        progress = ProgressTracker(len(items), description)
        if self.mode == ParallelismMode.SYNC or len(items) <= 1:
            results = []
            for item in items:
                start = time.perf_counter()
                try:
                    results.append(func(item))
                except Exception:
                    progress.item_completed(success=False)
                    raise
                progress.item_completed(duration=time.perf_counter() - start)
        else:
            results = self._map_threads(func, items, progress)

        summary = progress.get_summary()
        logger.debug(
            f"{description}: {summary['completed']}/{summary['total']} done "
            f"in {summary['elapsed_seconds']:.3f}s"
        )
        return results

    def _map_threads(
        self,
        func: Callable[[T], R],
        items: Sequence[T],
        progress: ProgressTracker,
    ) -> List[R]:
        results: List[Any] = [None] * len(items)
        first_error: Optional[BaseException] = None

        def timed(index: int) -> tuple:
            start = time.perf_counter()
            return index, func(items[index]), time.perf_counter() - start

        with concurrent.futures.ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(timed, i) for i in range(len(items))]
            for future in concurrent.futures.as_completed(futures):
                try:
                    index, value, duration = future.result()
                except Exception as e:
                    logger.error(f"{progress.description}: task failed: {str(e)}")
                    progress.item_completed(success=False)
                    if first_error is None:
                        first_error = e
                    continue
                results[index] = value
                progress.item_completed(duration=duration)

        if first_error is not None:
            raise first_error
        return results
