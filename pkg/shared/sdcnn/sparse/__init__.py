"""Minimal sparse linear algebra: CSR storage, products, thresholding."""

from .matrix import DenseMatrix, SparseMatrix
from .ops import from_triplets, nnz, spmm_dense, spmm_sparse, threshold

__all__ = [
    "SparseMatrix",
    "DenseMatrix",
    "from_triplets",
    "spmm_sparse",
    "spmm_dense",
    "threshold",
    "nnz",
]
