"""
Desk-scale synthetic graphs standing in for citation networks.

Each generator is registered as a `synth.<kind>` task taking a
SyntheticSpec; generate_synthetic dispatches by kind.
"""

import logging
from typing import Union

import networkx as nx
import numpy as np

from schemas.config import SyntheticSpec

from ..decorator import family_names, get_task, task
from ..errors import InputError
from ..sparse import DenseMatrix, from_triplets
from .dataset import GraphDataset


logger = logging.getLogger(__name__)


def _block_sizes(n_nodes: int, n_blocks: int) -> list[int]:
    sizes = [n_nodes // n_blocks] * n_blocks
    for i in range(n_nodes % n_blocks):
        sizes[i] += 1
    return sizes


def _contiguous_labels(n_nodes: int, n_blocks: int) -> np.ndarray:
    return (np.arange(n_nodes) * n_blocks) // n_nodes


def _features(spec: SyntheticSpec, labels: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng(spec.seed)
    n, f = labels.shape[0], spec.n_features
    if spec.features == "position":
        return np.tile((np.arange(n) + 1.0)[:, None], (1, f))
    x = spec.noise * rng.standard_normal((n, f))
    if spec.features == "class":
        # class c is shifted along every feature k with k % n_blocks == c
        centroids = spec.signal * (np.arange(f)[None, :] % spec.n_blocks == np.arange(spec.n_blocks)[:, None])
        x += centroids[labels]
    return x


def _to_dataset(graph: nx.Graph, labels: np.ndarray, spec: SyntheticSpec) -> GraphDataset:
    n = graph.number_of_nodes()
    triplets = {}
    for u, v in graph.edges():
        triplets[(u, v)] = 1.0
        triplets[(v, u)] = 1.0
    adjacency = from_triplets(((u, v, w) for (u, v), w in triplets.items()), n, n)
    features = DenseMatrix(_features(spec, labels))
    logger.debug(f"Generated {spec.kind} graph: {n} nodes, {graph.number_of_edges()} edges")
    return GraphDataset(adjacency, features, labels, spec.n_blocks)


@task(name="synth.sbm", tags=["synthetic", "graph"], input=SyntheticSpec)
def sbm(spec: SyntheticSpec) -> GraphDataset:
    """Stochastic block model; labels are the blocks."""
    sizes = _block_sizes(spec.n_nodes, spec.n_blocks)
    probs = np.full((spec.n_blocks, spec.n_blocks), spec.p_out)
    np.fill_diagonal(probs, spec.p_in)
    graph = nx.stochastic_block_model(sizes, probs.tolist(), seed=spec.seed)
    labels = np.array([graph.nodes[i]["block"] for i in range(spec.n_nodes)], dtype=np.int64)
    return _to_dataset(graph, labels, spec)


@task(name="synth.path", tags=["synthetic", "graph"], input=SyntheticSpec)
def path(spec: SyntheticSpec) -> GraphDataset:
    """Path graph 0-1-...-(n-1); labels are contiguous id ranges."""
    graph = nx.path_graph(spec.n_nodes)
    return _to_dataset(graph, _contiguous_labels(spec.n_nodes, spec.n_blocks), spec)


@task(name="synth.complete", tags=["synthetic", "graph"], input=SyntheticSpec)
def complete(spec: SyntheticSpec) -> GraphDataset:
    """Complete graph without self-loops; labels are contiguous id ranges."""
    graph = nx.complete_graph(spec.n_nodes)
    return _to_dataset(graph, _contiguous_labels(spec.n_nodes, spec.n_blocks), spec)


@task(name="synth.scale_free", tags=["synthetic", "graph"], input=SyntheticSpec)
def scale_free(spec: SyntheticSpec) -> GraphDataset:
    """Barabasi-Albert preferential attachment graph."""
    graph = nx.barabasi_albert_graph(spec.n_nodes, spec.attach, seed=spec.seed)
    return _to_dataset(graph, _contiguous_labels(spec.n_nodes, spec.n_blocks), spec)


def generate_synthetic(
    kind: str,
    params: Union[dict, SyntheticSpec, None] = None,
    seed: int = 0,
) -> GraphDataset:
    """
    Generate a synthetic dataset of the given kind.

    Args:
        kind: One of the registered generators (sbm, path, complete, scale_free)
        params: SyntheticSpec fields (kind and seed are taken from the arguments)
        seed: Seed for both the graph and the features
    """
    from ..discovery import ensure_discovered

    ensure_discovered()
    meta = get_task(f"synth.{kind}")
    if meta is None:
        available = ", ".join(family_names("synth"))
        raise InputError(f"unknown synthetic graph kind {kind!r}. Available: {available}")

    if isinstance(params, SyntheticSpec):
        params = params.model_dump()
    spec = meta.validate_input({**(params or {}), "kind": kind, "seed": seed})
    return meta.func(spec)
