"""
`sdcnn evaluate`: apply a saved model to the configured graph.

The graph may differ from the one the model was trained on as long as the
feature count matches; the kernel is rebuilt with the checkpoint's hop
count and thresholding.
"""

import logging
from pathlib import Path

from schemas.config import RunConfig

from ..decorator import task
from ..errors import ConfigError, InputError
from ..graph import transition_matrix
from ..kernel import build_kernel, diffuse_features
from ..model import forward, load_checkpoint
from ..train.report import write_metrics_csv
from ..train.trainer import metrics_from_trace
from ._common import CommandResult, load_run_dataset, run_command


logger = logging.getLogger(__name__)


def _evaluate(config: RunConfig, digest: str, checkpoint=None) -> CommandResult:
    if checkpoint is None:
        raise ConfigError("evaluate needs --checkpoint")
    model, doc = load_checkpoint(checkpoint)
    dataset = load_run_dataset(config)
    if dataset.n_features != model.n_features:
        raise InputError(
            f"checkpoint expects {model.n_features} features, graph has {dataset.n_features}"
        )
    if dataset.n_classes > model.n_classes:
        raise InputError(
            f"checkpoint predicts {model.n_classes} classes, graph has {dataset.n_classes}"
        )

    p = transition_matrix(dataset.adjacency)
    kernel = build_kernel(p, doc.threshold_mode, doc.threshold, doc.n_hops)
    trace = forward(model, diffuse_features(kernel, dataset.features))

    masks = {split: dataset.mask(split) for split in ("train", "valid", "test")}
    masks["all"] = dataset.labeled_mask
    metrics = {
        name: metrics_from_trace(trace, dataset.labels, mask)
        for name, mask in masks.items()
        if mask.any()
    }
    logger.info(f"Evaluated {Path(checkpoint).name} on {dataset.n_nodes} nodes")
    return CommandResult(outputs=[write_metrics_csv(config.output.dir / "eval_metrics.csv", metrics, digest)])


@task(name="cli.evaluate", tags=["cli", "model", "csv"])
def cmd_evaluate(config_path, out_dir=None, seed=None, parallel=None, checkpoint=None, **_) -> int:
    """Evaluate a checkpoint on the configured graph (possibly a different one)."""
    return run_command(
        "evaluate", config_path, _evaluate,
        out_dir=out_dir, seed=seed, parallel=parallel, checkpoint=checkpoint,
    )
