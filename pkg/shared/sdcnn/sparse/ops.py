"""
Sparse products, entrywise thresholding and nnz accounting.

All functions are pure: inputs are never modified and outputs are always in
canonical form (strictly increasing columns per row, no stored zeros).
"""

from typing import Iterable

import numpy as np

from ..errors import InputError
from .matrix import DenseMatrix, SparseMatrix


def _index_array(values: list, axis: str) -> np.ndarray:
    raw = np.asarray(values)
    if raw.dtype.kind in "iu":
        return raw.astype(np.int64)
    if raw.dtype.kind == "f":
        integral = np.isfinite(raw) & (raw == np.floor(raw))
        if np.all(integral):
            return raw.astype(np.int64)
        k = int(np.argmin(integral))
        raise InputError(f"non-integer {axis} index {values[k]!r}")
    raise InputError(f"{axis} indices must be integers, got {raw.dtype}")


def from_triplets(
    triplets: Iterable[tuple[int, int, float]],
    n_rows: int,
    n_cols: int,
) -> SparseMatrix:
    """Build a canonical matrix from (row, col, value) triplets; zero values are dropped."""
    if n_rows < 0 or n_cols < 0:
        raise InputError(f"invalid shape {n_rows}x{n_cols}")

    triplets = list(triplets)
    if not triplets:
        return SparseMatrix.zeros(n_rows, n_cols)

    rows = _index_array([t[0] for t in triplets], "row")
    cols = _index_array([t[1] for t in triplets], "column")
    vals = np.array([t[2] for t in triplets], dtype=np.float64)

    bad = (rows < 0) | (rows >= n_rows) | (cols < 0) | (cols >= n_cols)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise InputError(f"index ({rows[k]}, {cols[k]}) out of range for {n_rows}x{n_cols}")

    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]

    dup = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
    if np.any(dup):
        k = int(np.argmax(dup))
        raise InputError(f"duplicate coordinate ({rows[k]}, {cols[k]})")

    keep = vals != 0.0
    rows, cols, vals = rows[keep], cols[keep], vals[keep]
    offsets = np.concatenate(([0], np.cumsum(np.bincount(rows, minlength=n_rows))))
    return SparseMatrix(n_rows, n_cols, offsets, cols, vals)


def _gustavson(a: SparseMatrix, b: SparseMatrix) -> tuple[SparseMatrix, int]:
    """
    Row-wise product A·B.

    Row i of the result accumulates a_ik * B[k, :] over the stored k of row i.
    Returns the product and the largest working-row buffer used (number of
    partial products held at once), which the kernel ledger records.
    """
    if a.n_cols != b.n_rows:
        raise InputError(f"dimension mismatch: {a.n_rows}x{a.n_cols} times {b.n_rows}x{b.n_cols}")

    b_lengths = np.diff(b.row_offsets)
    offsets = np.zeros(a.n_rows + 1, dtype=np.int64)
    out_cols: list[np.ndarray] = []
    out_vals: list[np.ndarray] = []
    max_buffer = 0

    for i in range(a.n_rows):
        ks, a_vals = a.row(i)
        lengths = b_lengths[ks]
        total = int(lengths.sum())
        if total == 0:
            offsets[i + 1] = offsets[i]
            continue
        max_buffer = max(max_buffer, total)

        idx = np.concatenate([np.arange(b.row_offsets[k], b.row_offsets[k + 1]) for k in ks])
        partial = np.repeat(a_vals, lengths) * b.values[idx]
        cols, inverse = np.unique(b.col_indices[idx], return_inverse=True)
        acc = np.bincount(inverse, weights=partial, minlength=cols.shape[0])

        keep = acc != 0.0
        out_cols.append(cols[keep])
        out_vals.append(acc[keep])
        offsets[i + 1] = offsets[i] + int(keep.sum())

    if not out_cols:
        return SparseMatrix.zeros(a.n_rows, b.n_cols), max_buffer
    product = SparseMatrix(
        a.n_rows, b.n_cols, offsets, np.concatenate(out_cols), np.concatenate(out_vals)
    )
    return product, max_buffer


def spmm_sparse(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Exact sparse×sparse product; accumulated values of exactly 0.0 are dropped."""
    product, _ = _gustavson(a, b)
    return product


def spmm_dense(a: SparseMatrix, x: DenseMatrix) -> DenseMatrix:
    """Exact sparse×dense product."""
    if a.n_cols != x.n_rows:
        raise InputError(f"dimension mismatch: {a.n_rows}x{a.n_cols} times {x.n_rows}x{x.n_cols}")
    out = np.zeros((a.n_rows, x.n_cols))
    np.add.at(out, a.row_ids(), a.values[:, None] * x.values[a.col_indices])
    return DenseMatrix(out)


def threshold(a: SparseMatrix, t: float) -> SparseMatrix:
    """Keep entries with value >= t verbatim, drop the rest."""
    if not t >= 0:
        raise InputError(f"threshold must be >= 0, got {t}")
    keep = a.values >= t
    if np.all(keep):
        return a
    counts = np.bincount(a.row_ids()[keep], minlength=a.n_rows)
    offsets = np.concatenate(([0], np.cumsum(counts)))
    return SparseMatrix(a.n_rows, a.n_cols, offsets, a.col_indices[keep], a.values[keep])


def nnz(a: SparseMatrix) -> int:
    """Number of stored entries."""
    return a.nnz
