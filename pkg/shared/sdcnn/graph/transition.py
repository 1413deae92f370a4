"""
Degree-normalized random-walk transition matrices.
"""

import numpy as np

from ..errors import InputError
from ..sparse import SparseMatrix


def transition_matrix(adjacency: SparseMatrix) -> SparseMatrix:
    """
    Divide every row by its weighted out-degree.

    Rows of isolated nodes (and sinks of directed graphs) stay all-zero: such
    a node's diffusion only ever sees its own features through hop 0.
    """
    if adjacency.n_rows != adjacency.n_cols:
        raise InputError(f"adjacency must be square, got {adjacency.shape}")
    if adjacency.nnz and adjacency.values.min() < 0:
        raise InputError("negative edge weight")

    degree = adjacency.row_sums()
    values = adjacency.values / degree[adjacency.row_ids()]
    return SparseMatrix(
        adjacency.n_rows, adjacency.n_cols, adjacency.row_offsets, adjacency.col_indices, values
    )


def edge_cutoff(p: SparseMatrix) -> float:
    """
    Largest transition probability.

    Any pre-threshold above this value removes every edge; for unweighted
    graphs it equals 1 / (smallest non-zero degree).
    """
    return float(p.values.max()) if p.nnz else 0.0


def min_degree(adjacency: SparseMatrix) -> int:
    """Smallest number of out-neighbors over all nodes."""
    return int(np.diff(adjacency.row_offsets).min()) if adjacency.n_rows else 0
