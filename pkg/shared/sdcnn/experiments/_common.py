"""
Shared plumbing for experiment commands: config loading, dataset
construction, error-to-exit-status mapping and the run log.
"""

import logging
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional

from schemas.common import RunLog, TaskError
from schemas.config import RunConfig

from ..config import config_hash, load_config
from ..errors import SdcnnError
from ..graph import GraphDataset, generate_synthetic, load_dataset, make_splits


logger = logging.getLogger(__name__)

RUN_LOG = "run_log.jsonl"


@dataclass
class CommandResult:
    outputs: list[Path] = field(default_factory=list)
    exit_status: int = 0
    error: Optional[TaskError] = None


def load_run_dataset(config: RunConfig, split: bool = True) -> GraphDataset:
    """Dataset described by [data] or [synthetic], with splits applied if asked."""
    if config.data is not None:
        data = config.data
        dataset = load_dataset(
            data.edges, data.features, data.labels, data.directed, data.normalize_features
        )
    else:
        spec = config.synthetic
        dataset = generate_synthetic(spec.kind, spec, spec.seed)
    return make_splits(dataset, config.split) if split else dataset


def run_command(
    name: str,
    config_path,
    body: Callable[..., CommandResult],
    out_dir=None,
    seed: Optional[int] = None,
    parallel: Optional[int] = None,
    **extra,
) -> int:
    """
    Run a command body and map failures to exit statuses.

    0 success, 1 config error, 2 data error, 3 numeric divergence,
    4 sweep finished with failed rows. Error messages go to standard error;
    one RunLog line is appended to the output directory's run log.
    """
    started = datetime.now(timezone.utc)
    config = None
    digest = ""
    try:
        config = load_config(config_path, out_dir=out_dir, seed=seed, parallel=parallel)
        digest = config_hash(config)
        result = body(config, digest, **extra)
    except SdcnnError as e:
        print(f"error: {e}", file=sys.stderr)
        logger.error(f"{name} failed: {e}")
        result = CommandResult(exit_status=e.exit_status, error=e.to_task_error())

    if config is not None:
        _append_run_log(config.output.dir, name, digest, started, result)
    return result.exit_status


def _append_run_log(
    out_dir: Path,
    command: str,
    digest: str,
    started: datetime,
    result: CommandResult,
) -> None:
    completed = datetime.now(timezone.utc)
    if result.exit_status == 0:
        status = "completed"
    elif result.exit_status == 4:
        status = "partial"
    else:
        status = "failed"
    entry = RunLog(
        command=command,
        config_hash=digest,
        started_at=started,
        completed_at=completed,
        duration_ms=int((completed - started).total_seconds() * 1000),
        status=status,
        exit_status=result.exit_status,
        error=result.error,
        outputs=[str(p) for p in result.outputs],
    )
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / RUN_LOG, "a", encoding="utf-8", newline="\n") as f:
            f.write(entry.model_dump_json() + "\n")
    except OSError as e:
        logger.warning(f"Could not write run log in {out_dir}: {e}")
