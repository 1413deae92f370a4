"""
Transient diffusion kernels {I, P, P^2, ..., P^H} with optional thresholding.

    none   every hop is an exact power of P
    pre    P is thresholded once and the thresholded matrix is raised to each
           power with sparse products only
    post   exact dense powers are computed and each one is thresholded
           afterwards; the dense intermediates show up in the ledger
"""

import logging
import threading
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..errors import InputError
from ..sparse import DenseMatrix, SparseMatrix, spmm_dense, threshold
from ..sparse.ops import _gustavson
from .ledger import MemoryLedger, slice_bound, with_bounds


logger = logging.getLogger(__name__)

Mode = Literal["none", "pre", "post"]

_build_lock = threading.Lock()
_build_count = 0


def build_count() -> int:
    """Kernels built in this process since the last reset."""
    return _build_count


def reset_build_count() -> None:
    """Reset the build counter (for testing)."""
    global _build_count
    with _build_lock:
        _build_count = 0


def _count_build() -> None:
    global _build_count
    with _build_lock:
        _build_count += 1


@dataclass(frozen=True, eq=False)
class DiffusionKernel:
    """H+1 hop matrices; slice 0 is the identity."""

    n_nodes: int
    n_hops: int
    slices: tuple[SparseMatrix, ...]
    mode: Mode
    threshold: float
    ledger: MemoryLedger

    def slice(self, hop: int) -> SparseMatrix:
        return self.slices[hop]


@dataclass(frozen=True, eq=False)
class DiffusedFeatures:
    """N x (H+1) x F tensor whose hop-j block is slice[j] @ X."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 3:
            raise InputError(f"expected an N x (H+1) x F tensor, got shape {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n_nodes(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_hops(self) -> int:
        return int(self.values.shape[1]) - 1

    @property
    def n_features(self) -> int:
        return int(self.values.shape[2])

    def hop(self, j: int) -> np.ndarray:
        return self.values[:, j, :]


def _check_inputs(p: SparseMatrix, t: float, n_hops: int) -> None:
    if p.n_rows != p.n_cols:
        raise InputError(f"transition matrix must be square, got {p.shape}")
    if p.n_rows == 0:
        raise InputError("empty graph")
    if not 0 <= t <= 1:
        raise InputError(f"threshold must lie in [0, 1], got {t}")
    if n_hops < 0:
        raise InputError(f"hop count must be >= 0, got {n_hops}")
    if p.nnz and (p.values.min() < 0 or p.row_sums().max() > 1 + 1e-9):
        raise InputError("transition matrix rows must be non-negative and sum to at most 1")


def _build_sparse(p: SparseMatrix, sigma: float, n_hops: int, mode: Mode) -> DiffusionKernel:
    n = p.n_rows
    p_bar = threshold(p, sigma)
    slices = [SparseMatrix.identity(n)]
    retained = n
    peak = retained

    if n_hops >= 1:
        slices.append(p_bar)
        retained += p_bar.nnz
        peak = max(peak, retained)

    for hop in range(2, n_hops + 1):
        power, buffer = _gustavson(slices[-1], p_bar)
        peak = max(peak, retained + power.nnz + buffer)
        retained += power.nnz
        slices.append(power)
        logger.debug(f"hop {hop}: nnz={power.nnz} row buffer={buffer}")

    ledger = MemoryLedger(
        per_slice_nnz=tuple(s.nnz for s in slices),
        peak_stored_entries=peak,
        dense_equivalent_entries=n * n * (n_hops + 1),
    )
    _count_build()
    return DiffusionKernel(n, n_hops, tuple(slices), mode, sigma, ledger)


def build_pre(p: SparseMatrix, sigma: float, n_hops: int) -> DiffusionKernel:
    """Threshold P at sigma, then take sparse powers of the thresholded matrix."""
    _check_inputs(p, sigma, n_hops)
    kernel = _build_sparse(p, sigma, n_hops, "pre")
    logger.info(
        f"Built pre kernel (sigma={sigma}, H={n_hops}): nnz={kernel.ledger.per_slice_nnz}, "
        f"peak={kernel.ledger.peak_stored_entries}"
    )
    return kernel


def build_post(p: SparseMatrix, rho: float, n_hops: int) -> DiffusionKernel:
    """
    Compute exact powers of P, thresholding each one at rho.

    For H >= 2 the powers are formed densely, so the peak holds three N x N
    arrays (P, the current power, the next power). With H = 1 there is no
    power to form and P is thresholded in its sparse form.
    """
    _check_inputs(p, rho, n_hops)
    n = p.n_rows
    slices = [SparseMatrix.identity(n)]
    retained = n
    peak = retained

    if n_hops == 1:
        slices.append(threshold(p, rho))
        peak = max(peak, retained + p.nnz)
        retained += slices[-1].nnz
    elif n_hops >= 2:
        dense_p = p.to_dense()
        power = dense_p
        slices.append(SparseMatrix.from_dense(np.where(power >= rho, power, 0.0)))
        retained += slices[-1].nnz
        peak = max(peak, retained + n * n)
        for hop in range(2, n_hops + 1):
            power = power @ dense_p
            peak = max(peak, retained + 3 * n * n)
            slices.append(SparseMatrix.from_dense(np.where(power >= rho, power, 0.0)))
            retained += slices[-1].nnz
            logger.debug(f"hop {hop}: nnz={slices[-1].nnz}")

    ledger = MemoryLedger(
        per_slice_nnz=tuple(s.nnz for s in slices),
        peak_stored_entries=peak,
        dense_equivalent_entries=n * n * (n_hops + 1),
    )
    _count_build()
    logger.info(
        f"Built post kernel (rho={rho}, H={n_hops}): nnz={ledger.per_slice_nnz}, "
        f"peak={ledger.peak_stored_entries}"
    )
    return DiffusionKernel(n, n_hops, tuple(slices), "post", rho, ledger)


def build_kernel(p: SparseMatrix, mode: Mode, t: float, n_hops: int) -> DiffusionKernel:
    """Dispatch on thresholding mode; "none" ignores t."""
    if mode == "pre":
        return build_pre(p, t, n_hops)
    if mode == "post":
        return build_post(p, t, n_hops)
    if mode == "none":
        _check_inputs(p, 0.0, n_hops)
        return _build_sparse(p, 0.0, n_hops, "none")
    raise InputError(f"unknown threshold mode {mode!r}")


def density(kernel: DiffusionKernel) -> float:
    """Stored entries over all slices divided by N^2 (H+1)."""
    return kernel.ledger.total_nnz / kernel.ledger.dense_equivalent_entries


def diffuse_features(kernel: DiffusionKernel, x: DenseMatrix) -> DiffusedFeatures:
    """Stack slice[j] @ X over hops; the hop-0 block is X itself."""
    if x.n_rows != kernel.n_nodes:
        raise InputError(f"{x.n_rows} feature rows for a {kernel.n_nodes}-node kernel")
    values = np.empty((kernel.n_nodes, kernel.n_hops + 1, x.n_cols))
    values[:, 0, :] = x.values
    for j in range(1, kernel.n_hops + 1):
        values[:, j, :] = spmm_dense(kernel.slices[j], x).values
    return DiffusedFeatures(values)


def memory_report(kernel: DiffusionKernel) -> MemoryLedger:
    """Ledger copy with the analytic per-slice bounds attached."""
    return with_bounds(kernel.ledger, kernel.threshold, kernel.n_nodes)


def slice_rows(kernel: DiffusionKernel) -> list[dict]:
    """One CSV row per hop: threshold, mode, hop, nnz, bound, density."""
    n = kernel.n_nodes
    return [
        {
            "threshold": kernel.threshold,
            "mode": kernel.mode,
            "hop": j,
            "nnz": s.nnz,
            "bound": slice_bound(kernel.threshold, j, n),
            "density": s.nnz / (n * n),
        }
        for j, s in enumerate(kernel.slices)
    ]
