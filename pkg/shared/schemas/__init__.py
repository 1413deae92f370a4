"""
Shared schemas - single source of truth for configuration and report shapes.

Pydantic models validate experiment configs, carry sweep/metric rows to CSV
and JSON-lines outputs, and define the checkpoint document.
"""

from .common import RunLog, TaskError
from .config import (
    DataPaths,
    OutputConfig,
    RunConfig,
    SplitConfig,
    SweepConfig,
    SyntheticSpec,
    TrainConfig,
)
from .reports import Checkpoint, Metrics, SweepRow

__all__ = [
    # Common
    "TaskError",
    "RunLog",
    # Config
    "DataPaths",
    "SyntheticSpec",
    "SplitConfig",
    "TrainConfig",
    "SweepConfig",
    "OutputConfig",
    "RunConfig",
    # Reports
    "Metrics",
    "SweepRow",
    "Checkpoint",
]
