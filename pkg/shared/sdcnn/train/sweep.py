"""
Threshold sweeps: kernel density, peak stored entries and classification
metrics per threshold, each trained from scratch with the same seed.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from schemas.common import TaskError
from schemas.config import ThresholdMode, TrainConfig
from schemas.reports import SweepRow

from ..errors import InputError, SdcnnError
from ..graph import GraphDataset, edge_cutoff, min_degree, transition_matrix
from ..kernel import build_kernel, density, diffuse_features
from ..sparse import SparseMatrix
from ..utils import ResourceTracker
from .trainer import evaluate, train


logger = logging.getLogger(__name__)


@dataclass
class SweepReport:
    """Rows in input threshold order plus per-dataset context."""

    rows: list[SweepRow]
    n_nodes: int
    edge_cutoff: float
    min_degree: int
    tracker: ResourceTracker = field(default_factory=ResourceTracker, repr=False)

    @property
    def failures(self) -> list[SweepRow]:
        return [row for row in self.rows if row.failed]


def _run_threshold(
    dataset: GraphDataset,
    p: SparseMatrix,
    t: float,
    mode: ThresholdMode,
    config: TrainConfig,
    tracker: ResourceTracker,
) -> SweepRow:
    with tracker.track_task(f"sweep.{mode}.{t!r}") as tracked:
        try:
            kernel = build_kernel(p, mode, t, config.n_hops)
            run_config = config.model_copy(update={"threshold_mode": mode, "threshold": t})
            model, history = train(dataset, run_config, kernel=kernel)
            diffused = diffuse_features(kernel, dataset.features)
            metrics = {
                split: evaluate(model, dataset, kernel, split, diffused)
                for split in ("train", "valid", "test")
                if dataset.mask(split).any()
            }
            row = SweepRow(
                threshold=t,
                mode=mode,
                hops=config.n_hops,
                density=density(kernel),
                peak_entries=kernel.ledger.peak_stored_entries,
                epochs=history.epochs_run,
                **metrics,
            )
        except Exception as e:
            error = e.to_task_error() if isinstance(e, SdcnnError) else TaskError(
                code="UNEXPECTED", message=str(e)
            )
            error.message = f"threshold {t}: {error.message}"
            error.details = {**(error.details or {}), "threshold": t}
            logger.warning(f"Sweep row failed: {error.message}")
            tracked.fail(error.message)
            row = SweepRow(threshold=t, mode=mode, hops=config.n_hops, error=error)

    row.seconds = tracked.duration
    return row


def sweep(
    dataset: GraphDataset,
    thresholds: Sequence[float],
    mode: ThresholdMode,
    config: TrainConfig,
    workers: int = 1,
) -> SweepReport:
    """
    Train one model per threshold.

    A failing threshold becomes a row carrying its error; the remaining
    thresholds still run. With workers > 1 rows run concurrently but are
    reported in input order.
    """
    thresholds = list(thresholds)
    if any(b < a for a, b in zip(thresholds, thresholds[1:])):
        raise InputError("thresholds must be sorted ascending")

    p = transition_matrix(dataset.adjacency)
    tracker = ResourceTracker()
    cutoff = edge_cutoff(p)
    logger.info(
        f"Sweeping {len(thresholds)} {mode} thresholds (H={config.n_hops}); "
        f"edges vanish above {cutoff:.6g}"
    )

    def run(t: float) -> SweepRow:
        return _run_threshold(dataset, p, t, mode, config, tracker)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, thresholds))
    else:
        rows = [run(t) for t in thresholds]

    return SweepReport(rows, dataset.n_nodes, cutoff, min_degree(dataset.adjacency), tracker)
