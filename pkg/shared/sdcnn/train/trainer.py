"""
Full-batch gradient descent with early stopping on validation loss.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from sklearn.metrics import accuracy_score, f1_score

from schemas.config import TrainConfig
from schemas.reports import Metrics

from ..errors import ConfigError, InputError, NumericError
from ..graph import GraphDataset, transition_matrix
from ..kernel import DiffusedFeatures, DiffusionKernel, build_kernel, diffuse_features
from ..model import DcnnModel, ForwardTrace, backward, forward, init_model, loss, predict


logger = logging.getLogger(__name__)


@dataclass
class TrainHistory:
    """Per-epoch losses, recorded before each epoch's update."""

    train_loss: list[float] = field(default_factory=list)
    valid_loss: list[float] = field(default_factory=list)
    best_epoch: int = 0
    stopped_early: bool = False

    @property
    def epochs_run(self) -> int:
        return len(self.train_loss)

    def rows(self) -> list[dict]:
        return [
            {"epoch": i + 1, "train_loss": t, "valid_loss": v}
            for i, (t, v) in enumerate(zip(self.train_loss, self.valid_loss))
        ]


def kernel_for(dataset: GraphDataset, config: TrainConfig) -> DiffusionKernel:
    """Build the diffusion kernel a config asks for."""
    p = transition_matrix(dataset.adjacency)
    return build_kernel(p, config.threshold_mode, config.threshold, config.n_hops)


def train(
    dataset: GraphDataset,
    config: TrainConfig,
    kernel: Optional[DiffusionKernel] = None,
) -> tuple[DcnnModel, TrainHistory]:
    """
    Train a DCNN on the dataset's train mask.

    The kernel is built once (or taken as given) and its diffused features
    are reused by every epoch. Returns the weights with the lowest
    validation loss seen.
    """
    if not dataset.train_mask.any() or not dataset.valid_mask.any():
        raise ConfigError("training needs non-empty train and valid splits (run make_splits first)")
    if kernel is None:
        kernel = kernel_for(dataset, config)
    elif kernel.n_nodes != dataset.n_nodes or kernel.n_hops != config.n_hops:
        raise InputError(
            f"kernel for N={kernel.n_nodes}, H={kernel.n_hops} does not match "
            f"dataset N={dataset.n_nodes}, H={config.n_hops}"
        )

    diffused = diffuse_features(kernel, dataset.features)
    labels = dataset.labels
    model = init_model(
        config.n_hops, dataset.n_features, dataset.n_classes, config.seed, config.activation
    )
    velocity = [np.zeros_like(model.w_c), np.zeros_like(model.w_d), np.zeros_like(model.bias)]

    history = TrainHistory()
    best = model.copy()
    best_valid = math.inf
    waited = 0
    reference = None

    for epoch in range(1, config.max_epochs + 1):
        trace = forward(model, diffused)
        train_loss = loss(trace, labels, dataset.train_mask)
        valid_loss = loss(trace, labels, dataset.valid_mask)

        if reference is None:
            reference = max(train_loss, 1.0)
        if not (math.isfinite(train_loss) and math.isfinite(valid_loss)) \
                or train_loss > config.divergence_factor * reference:
            raise NumericError(
                f"training diverged at epoch {epoch} (train loss {train_loss:.6g})", epoch=epoch
            )

        history.train_loss.append(train_loss)
        history.valid_loss.append(valid_loss)
        if epoch % config.log_every == 0:
            logger.debug(f"epoch {epoch}: train={train_loss:.6f} valid={valid_loss:.6f}")

        if valid_loss < best_valid:
            best, best_valid, history.best_epoch = model.copy(), valid_loss, epoch
            waited = 0
        else:
            waited += 1
            if waited >= config.patience:
                history.stopped_early = True
                break

        grads = backward(model, diffused, trace, labels, dataset.train_mask)
        for v, param, grad in zip(velocity, (model.w_c, model.w_d, model.bias),
                                  (grads.d_w_c, grads.d_w_d, grads.d_bias)):
            v *= config.momentum
            v -= config.learning_rate * grad
            param += v

        if not model.is_finite():
            raise NumericError(f"training diverged at epoch {epoch} (non-finite weights)", epoch=epoch)

    if history.stopped_early and history.best_epoch == 1:
        logger.warning("Validation loss never improved after the first epoch; check the learning rate")
    logger.info(
        f"Training finished after {history.epochs_run} epochs; "
        f"best valid loss {best_valid:.6f} at epoch {history.best_epoch}"
    )
    return best, history


def compute_metrics(y_true: np.ndarray, y_pred: np.ndarray, loss_value: float) -> Metrics:
    """Accuracy and macro-F1 over the classes present in either array."""
    return Metrics(
        accuracy=float(accuracy_score(y_true, y_pred)),
        macro_f1=float(f1_score(y_true, y_pred, average="macro", zero_division=0)),
        loss=loss_value,
        n_nodes=int(len(y_true)),
    )


def metrics_from_trace(trace: ForwardTrace, labels: np.ndarray, mask: np.ndarray) -> Metrics:
    if not np.any(mask):
        raise InputError("cannot evaluate an empty split")
    predictions = predict(trace)
    return compute_metrics(labels[mask], predictions[mask], loss(trace, labels, mask))


def evaluate(
    model: DcnnModel,
    dataset: GraphDataset,
    kernel: DiffusionKernel,
    split: str,
    diffused: Optional[DiffusedFeatures] = None,
) -> Metrics:
    """Accuracy, macro-F1 and loss over one split."""
    mask = dataset.mask(split)
    if not mask.any():
        raise InputError(f"{split} split is empty")
    if diffused is None:
        diffused = diffuse_features(kernel, dataset.features)
    return metrics_from_trace(forward(model, diffused), dataset.labels, mask)
