"""
Report schemas - metrics, sweep rows, and the model checkpoint document.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field

from .common import TaskError


class Metrics(BaseModel):
    """Classification metrics over one split."""

    accuracy: float = Field(ge=0, le=1)
    macro_f1: float = Field(ge=0, le=1)
    loss: float
    n_nodes: int = Field(ge=1)


class SweepRow(BaseModel):
    """One (threshold, mode) result of a threshold sweep."""

    threshold: float
    mode: Literal["none", "pre", "post"]
    hops: int
    density: Optional[float] = Field(default=None, ge=0, le=1)
    peak_entries: Optional[int] = None
    train: Optional[Metrics] = None
    valid: Optional[Metrics] = None
    test: Optional[Metrics] = None
    epochs: Optional[int] = None
    seconds: float = 0.0
    error: Optional[TaskError] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


class Checkpoint(BaseModel):
    """
    Versioned model checkpoint.

    Weight arrays are stored row-major as float.hex() strings so a
    save/load cycle reproduces every float64 bit-for-bit.
    """

    version: Literal[1] = 1
    n_hops: int = Field(ge=0)
    n_features: int = Field(ge=1)
    n_classes: int = Field(ge=1)
    activation: Literal["tanh", "relu", "identity"]
    threshold_mode: Literal["none", "pre", "post"]
    threshold: float = Field(ge=0, le=1)
    w_c: list[str]
    w_d: list[str]
    bias: list[str]
