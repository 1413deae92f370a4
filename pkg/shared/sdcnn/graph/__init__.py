"""Graph loading, transition matrices, splits and synthetic generators."""

from .dataset import GraphDataset, load_dataset, save_dataset
from .splits import make_splits
from .synthetic import generate_synthetic
from .transition import edge_cutoff, min_degree, transition_matrix

__all__ = [
    "GraphDataset",
    "load_dataset",
    "save_dataset",
    "transition_matrix",
    "edge_cutoff",
    "min_degree",
    "make_splits",
    "generate_synthetic",
]
