"""
`sdcnn train`: one training run with checkpoint, metrics and history.
"""

import logging

from schemas.config import RunConfig

from ..decorator import task
from ..model import save_checkpoint
from ..train import evaluate, kernel_for, train
from ..train.report import write_history_csv, write_metrics_csv
from ._common import CommandResult, load_run_dataset, run_command


logger = logging.getLogger(__name__)


def _train(config: RunConfig, digest: str) -> CommandResult:
    dataset = load_run_dataset(config)
    kernel = kernel_for(dataset, config.train)
    model, history = train(dataset, config.train, kernel=kernel)

    metrics = {
        split: evaluate(model, dataset, kernel, split)
        for split in ("train", "valid", "test")
        if dataset.mask(split).any()
    }
    for split, m in metrics.items():
        logger.info(f"{split}: accuracy={m.accuracy:.4f} macro_f1={m.macro_f1:.4f} loss={m.loss:.4f}")

    out = config.output.dir
    outputs = [
        save_checkpoint(model, out / "checkpoint.json", config.train.threshold_mode, config.train.threshold),
        write_metrics_csv(out / "metrics.csv", metrics, digest),
        write_history_csv(out / "history.csv", history, digest),
    ]
    return CommandResult(outputs=outputs)


@task(name="cli.train", tags=["cli", "train", "checkpoint", "csv"])
def cmd_train(config_path, out_dir=None, seed=None, parallel=None, **_) -> int:
    """Train one model; write checkpoint, metrics and history."""
    return run_command("train", config_path, _train, out_dir=out_dir, seed=seed, parallel=parallel)
