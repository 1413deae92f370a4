"""Training loop, evaluation metrics and threshold sweeps."""

from .sweep import SweepReport, sweep
from .trainer import TrainHistory, compute_metrics, evaluate, kernel_for, train

__all__ = [
    "TrainHistory",
    "SweepReport",
    "train",
    "evaluate",
    "compute_metrics",
    "kernel_for",
    "sweep",
]
