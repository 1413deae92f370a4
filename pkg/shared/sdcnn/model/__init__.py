"""The two-layer diffusion-convolutional model and its checkpoints."""

from .checkpoint import load_checkpoint, save_checkpoint
from .dcnn import (
    DcnnModel,
    ForwardTrace,
    Gradients,
    backward,
    forward,
    init_model,
    loss,
    predict,
)

__all__ = [
    "DcnnModel",
    "ForwardTrace",
    "Gradients",
    "init_model",
    "forward",
    "predict",
    "loss",
    "backward",
    "save_checkpoint",
    "load_checkpoint",
]
