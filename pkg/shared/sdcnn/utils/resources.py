"""
Wall time and failure bookkeeping for sweep rows.

Rows may finish on worker threads, so records are appended under a lock
and kept in completion order.
"""

import threading
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator, Optional


@dataclass
class TrackedRun:
    """One timed unit of work; duration is set when the block exits."""

    label: str
    duration: float = 0.0
    error: Optional[str] = None

    def fail(self, error: str) -> None:
        """Mark failed without raising, for errors handled inside the block."""
        self.error = error

    @property
    def ok(self) -> bool:
        return self.error is None


class ResourceTracker:
    """
    Collects a TrackedRun per `with tracker.track_task(label)` block.

        tracker = ResourceTracker()
        with tracker.track_task("sweep.pre.0.05") as run:
            row = run_threshold(0.05)
        tracker.failures, tracker.total_seconds
    """

    def __init__(self):
        self.runs: list[TrackedRun] = []
        self._lock = threading.Lock()

    @contextmanager
    def track_task(self, label: str) -> Iterator[TrackedRun]:
        run = TrackedRun(label)
        start = time.perf_counter()
        try:
            yield run
        except BaseException as e:
            run.error = str(e)
            raise
        finally:
            run.duration = time.perf_counter() - start
            with self._lock:
                self.runs.append(run)

    @property
    def failures(self) -> list[TrackedRun]:
        return [r for r in self.runs if not r.ok]

    @property
    def total_seconds(self) -> float:
        return sum(r.duration for r in self.runs)

    def summary(self) -> dict:
        return {
            "runs": len(self.runs),
            "failed": len(self.failures),
            "total_seconds": self.total_seconds,
        }
