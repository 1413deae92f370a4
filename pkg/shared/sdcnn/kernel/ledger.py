"""
Stored-entry accounting for kernel construction.

The ledger counts (index, value) pairs rather than bytes, which is enough to
tell linear from quadratic growth and does not depend on the machine.
"""

import math
from dataclasses import dataclass, replace
from typing import Optional


@dataclass(frozen=True)
class MemoryLedger:
    """Entry counts recorded while a kernel was built."""

    per_slice_nnz: tuple[int, ...]
    peak_stored_entries: int
    dense_equivalent_entries: int
    bounds: Optional[tuple[int, ...]] = None
    """Analytic per-slice bounds, attached by memory_report()."""

    @property
    def total_nnz(self) -> int:
        return sum(self.per_slice_nnz)

    @property
    def within_bounds(self) -> Optional[bool]:
        if self.bounds is None:
            return None
        return all(n <= b for n, b in zip(self.per_slice_nnz, self.bounds))


def max_row_fanout(threshold: float) -> Optional[int]:
    """
    Most entries >= threshold a row summing to at most 1 can hold.

    None when the threshold is zero (no limit). A small tolerance keeps
    thresholds like 0.2 from losing a slot to rounding in 1/0.2.
    """
    if threshold <= 0:
        return None
    return math.floor(1.0 / threshold + 1e-9)


def row_bound(threshold: float, hop: int, n_nodes: int) -> int:
    """Upper bound on stored entries per row of hop `hop`."""
    if hop == 0:
        return 1
    fanout = max_row_fanout(threshold)
    if fanout is None:
        return n_nodes
    return min(fanout ** hop, n_nodes)


def slice_bound(threshold: float, hop: int, n_nodes: int) -> int:
    """min(N * floor(1/threshold)^hop, N^2); N for the identity slice."""
    return n_nodes * row_bound(threshold, hop, n_nodes)


def with_bounds(ledger: MemoryLedger, threshold: float, n_nodes: int) -> MemoryLedger:
    bounds = tuple(slice_bound(threshold, j, n_nodes) for j in range(len(ledger.per_slice_nnz)))
    return replace(ledger, bounds=bounds)
