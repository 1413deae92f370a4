"""
Compressed sparse row storage and a thin dense wrapper.

Both types are immutable after construction: their numpy buffers are marked
read-only so matrices can be shared freely between threads.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import InputError


def _frozen(array: np.ndarray, dtype) -> np.ndarray:
    out = np.ascontiguousarray(array, dtype=dtype)
    if out is array:
        out = out.copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Row-major compressed sparse matrix of float64 values."""

    n_rows: int
    n_cols: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "row_offsets", _frozen(self.row_offsets, np.int64))
        object.__setattr__(self, "col_indices", _frozen(self.col_indices, np.int64))
        object.__setattr__(self, "values", _frozen(self.values, np.float64))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def nnz(self) -> int:
        return int(self.values.shape[0])

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, np.arange(n + 1), np.arange(n), np.ones(n))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "SparseMatrix":
        return cls(n_rows, n_cols, np.zeros(n_rows + 1), np.zeros(0), np.zeros(0))

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "SparseMatrix":
        """Canonical CSR copy of a 2-D array; exact zeros are not stored."""
        dense = np.asarray(dense, dtype=np.float64)
        if dense.ndim != 2:
            raise InputError(f"expected a 2-D array, got shape {dense.shape}")
        rows, cols = np.nonzero(dense)
        counts = np.bincount(rows, minlength=dense.shape[0])
        offsets = np.concatenate(([0], np.cumsum(counts)))
        return cls(dense.shape[0], dense.shape[1], offsets, cols, dense[rows, cols])

    def row_ids(self) -> np.ndarray:
        """Row index of every stored entry."""
        return np.repeat(np.arange(self.n_rows), np.diff(self.row_offsets))

    def row_nnz(self) -> np.ndarray:
        """Stored entries per row."""
        return np.diff(self.row_offsets)

    def row_sums(self) -> np.ndarray:
        return np.bincount(self.row_ids(), weights=self.values, minlength=self.n_rows)

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """(col_indices, values) of row i."""
        start, end = self.row_offsets[i], self.row_offsets[i + 1]
        return self.col_indices[start:end], self.values[start:end]

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols))
        out[self.row_ids(), self.col_indices] = self.values
        return out

    def transpose(self) -> "SparseMatrix":
        rows = self.row_ids()
        order = np.lexsort((rows, self.col_indices))
        counts = np.bincount(self.col_indices, minlength=self.n_cols)
        offsets = np.concatenate(([0], np.cumsum(counts)))
        return SparseMatrix(self.n_cols, self.n_rows, offsets, rows[order], self.values[order])

    def coordinates(self) -> set[tuple[int, int]]:
        return set(zip(self.row_ids().tolist(), self.col_indices.tolist()))

    def validate(self) -> None:
        """Raise InputError unless the canonical-form invariants hold."""
        offsets = self.row_offsets
        if offsets.shape != (self.n_rows + 1,):
            raise InputError(f"row_offsets has length {offsets.shape[0]}, expected {self.n_rows + 1}")
        if offsets[0] != 0 or np.any(np.diff(offsets) < 0):
            raise InputError("row_offsets must start at 0 and be non-decreasing")
        if offsets[-1] != self.values.shape[0] or self.col_indices.shape != self.values.shape:
            raise InputError("row_offsets, col_indices and values disagree on nnz")
        if self.nnz == 0:
            return
        if self.col_indices.min() < 0 or self.col_indices.max() >= self.n_cols:
            raise InputError("column index out of range")
        if np.any(self.values == 0.0):
            raise InputError("explicit zero stored")
        # strictly increasing columns within each row
        steps = np.diff(self.col_indices)
        row_starts = offsets[1:-1]
        interior = np.ones(steps.shape[0], dtype=bool)
        boundaries = row_starts[(row_starts > 0) & (row_starts < self.nnz)] - 1
        interior[boundaries] = False
        if np.any(steps[interior] <= 0):
            raise InputError("column indices not strictly increasing within a row")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.col_indices, other.col_indices)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz})"


@dataclass(frozen=True, eq=False)
class DenseMatrix:
    """Row-major float64 matrix."""

    values: np.ndarray

    def __post_init__(self):
        values = _frozen(self.values, np.float64)
        if values.ndim != 2:
            raise InputError(f"expected a 2-D array, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def n_rows(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.values.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"DenseMatrix({self.n_rows}x{self.n_cols})"
