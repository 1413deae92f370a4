"""Thresholded transient diffusion kernels and their memory ledger."""

from .diffusion import (
    DiffusedFeatures,
    DiffusionKernel,
    build_count,
    build_kernel,
    build_post,
    build_pre,
    density,
    diffuse_features,
    memory_report,
    reset_build_count,
    slice_rows,
)
from .ledger import MemoryLedger, row_bound, slice_bound

__all__ = [
    "DiffusionKernel",
    "DiffusedFeatures",
    "MemoryLedger",
    "build_pre",
    "build_post",
    "build_kernel",
    "density",
    "diffuse_features",
    "memory_report",
    "slice_rows",
    "row_bound",
    "slice_bound",
    "build_count",
    "reset_build_count",
]
