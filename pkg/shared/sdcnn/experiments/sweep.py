"""
`sdcnn sweep`: accuracy and density per threshold.
"""

import logging

from schemas.config import RunConfig

from ..decorator import task
from ..train import sweep
from ..train.report import write_sweep_csv, write_sweep_jsonl
from ._common import CommandResult, load_run_dataset, run_command


logger = logging.getLogger(__name__)


def _sweep(config: RunConfig, digest: str) -> CommandResult:
    dataset = load_run_dataset(config)
    report = sweep(
        dataset,
        config.sweep.thresholds,
        config.sweep.mode,
        config.train,
        workers=config.output.parallel,
    )

    out = config.output.dir
    outputs = [
        write_sweep_csv(out / "sweep.csv", report, digest, timing=config.output.timing),
        write_sweep_jsonl(out / "sweep.jsonl", report),
    ]

    logger.debug(f"Sweep timing: {report.tracker.summary()}")
    failures = report.failures
    for row in report.rows:
        if row.failed:
            continue
        acc = row.test.accuracy if row.test else float("nan")
        logger.info(f"{row.mode} {row.threshold}: density={row.density:.6g} test_accuracy={acc:.4f}")
    if failures:
        logger.warning(f"{len(failures)} of {len(report.rows)} thresholds failed")
        return CommandResult(outputs=outputs, exit_status=4, error=failures[0].error)
    return CommandResult(outputs=outputs)


@task(name="cli.sweep", tags=["cli", "experiment", "csv"])
def cmd_sweep(config_path, out_dir=None, seed=None, parallel=None, **_) -> int:
    """Train once per threshold and write the sweep CSV."""
    return run_command("sweep", config_path, _sweep, out_dir=out_dir, seed=seed, parallel=parallel)
