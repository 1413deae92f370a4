"""
sdcnn: sparse diffusion-convolutional neural networks.

Node classification on graphs with diffusion kernels kept sparse by
thresholding, either on the transition matrix before taking powers ("pre")
or on the dense powers afterwards ("post").

Packages:
- sparse/       CSR matrices, Gustavson products, thresholding
- graph/        Datasets, transition matrices, splits, synthetic graphs
- kernel/       Diffusion kernels and their memory ledger
- model/        The DCNN forward/backward pass and checkpoints
- train/        Training loop, metrics, threshold sweeps, CSV reports
- experiments/  The `cli.*` commands behind `sdcnn <command>`

Tasks (synthetic generators and CLI commands) register through @task and
are found by discover_tasks():

    filter_by_tag("synthetic")   # all graph generators
    get_task("cli.sweep")
"""

from .decorator import (
    STANDARD_TAGS,
    filter_by_tag,
    filter_by_tags,
    get_task,
    list_tasks,
    task,
)
from .discovery import discover_tasks, ensure_discovered, reset_discovery
from .errors import ConfigError, DataError, InputError, NumericError, SdcnnError

__version__ = "0.1.0"

__all__ = [
    "task",
    "get_task",
    "list_tasks",
    "filter_by_tag",
    "filter_by_tags",
    "discover_tasks",
    "ensure_discovered",
    "reset_discovery",
    "STANDARD_TAGS",
    "SdcnnError",
    "InputError",
    "DataError",
    "ConfigError",
    "NumericError",
]
