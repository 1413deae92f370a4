"""
Graph datasets: adjacency, node features, labels and split masks.

Text formats (whitespace-separated, '#' starts a comment):

    edges:     src dst [weight]
    features:  node_id f1 f2 ... fF
    labels:    node_id class_id      (nodes not listed are unlabeled)
"""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterator, Optional, Union

import numpy as np

from ..errors import DataError, InputError
from ..sparse import DenseMatrix, SparseMatrix, from_triplets


logger = logging.getLogger(__name__)

SPLITS = ("train", "valid", "test")

PathLike = Union[str, Path]


@dataclass(frozen=True, eq=False)
class GraphDataset:
    """A single graph with node features, labels and split masks."""

    adjacency: SparseMatrix
    features: DenseMatrix
    labels: np.ndarray
    """Class id per node, -1 for unlabeled nodes."""
    n_classes: int
    train_mask: Optional[np.ndarray] = field(default=None)
    valid_mask: Optional[np.ndarray] = field(default=None)
    test_mask: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        n = self.adjacency.n_rows
        if self.adjacency.n_cols != n:
            raise InputError(f"adjacency must be square, got {self.adjacency.shape}")
        if self.features.n_rows != n:
            raise InputError(f"{self.features.n_rows} feature rows for {n} nodes")
        if self.adjacency.nnz and self.adjacency.values.min() < 0:
            raise InputError("adjacency weights must be >= 0")

        labels = np.asarray(self.labels, dtype=np.int64).copy()
        if labels.shape != (n,):
            raise InputError(f"expected {n} labels, got shape {labels.shape}")
        if np.any((labels < -1) | (labels >= self.n_classes)):
            raise InputError(f"labels must lie in [0, {self.n_classes}) or be -1")
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)

        for name in SPLITS:
            mask = getattr(self, f"{name}_mask")
            mask = np.zeros(n, dtype=bool) if mask is None else np.asarray(mask, dtype=bool).copy()
            if mask.shape != (n,):
                raise InputError(f"{name} mask has shape {mask.shape}, expected ({n},)")
            if np.any(mask & (labels < 0)):
                raise InputError(f"{name} mask selects unlabeled nodes")
            mask.flags.writeable = False
            object.__setattr__(self, f"{name}_mask", mask)

        if np.any(self.train_mask & self.valid_mask) or np.any(self.train_mask & self.test_mask) \
                or np.any(self.valid_mask & self.test_mask):
            raise InputError("split masks overlap")

    @property
    def n_nodes(self) -> int:
        return self.adjacency.n_rows

    @property
    def n_features(self) -> int:
        return self.features.n_cols

    @property
    def labeled_mask(self) -> np.ndarray:
        return self.labels >= 0

    def mask(self, split: str) -> np.ndarray:
        if split not in SPLITS:
            raise InputError(f"unknown split {split!r}, expected one of {SPLITS}")
        return getattr(self, f"{split}_mask")

    def with_masks(self, train: np.ndarray, valid: np.ndarray, test: np.ndarray) -> "GraphDataset":
        return replace(self, train_mask=train, valid_mask=valid, test_mask=test)


def _read_rows(path: PathLike) -> Iterator[tuple[int, list[str]]]:
    """Yield (line number, tokens) for every non-empty, non-comment line."""
    try:
        with open(path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                line = line.split("#", 1)[0].strip()
                if line:
                    yield lineno, line.split()
    except FileNotFoundError:
        raise DataError("file not found", path=str(path)) from None
    except UnicodeDecodeError:
        raise DataError("not valid UTF-8", path=str(path)) from None
    except OSError as e:
        raise DataError(f"cannot read file: {e}", path=str(path)) from e


def _parse_int(token: str, what: str, path: PathLike, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DataError(f"non-integer {what} {token!r}", path=str(path), line=lineno) from None


def _parse_float(token: str, what: str, path: PathLike, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise DataError(f"non-numeric {what} {token!r}", path=str(path), line=lineno) from None
    if not np.isfinite(value):
        raise DataError(f"non-finite {what} {token!r}", path=str(path), line=lineno)
    return value


def read_features(path: PathLike) -> np.ndarray:
    """Feature rows indexed by node id; ids must cover 0..N-1."""
    rows: dict[int, list[float]] = {}
    width = None
    for lineno, tokens in _read_rows(path):
        node = _parse_int(tokens[0], "node id", path, lineno)
        values = [_parse_float(t, "feature", path, lineno) for t in tokens[1:]]
        if node < 0:
            raise DataError(f"negative node id {node}", path=str(path), line=lineno)
        if node in rows:
            raise DataError(f"duplicate feature row for node {node}", path=str(path), line=lineno)
        if width is None:
            width = len(values)
        if len(values) != width or width == 0:
            raise DataError(f"expected {width} features, got {len(values)}", path=str(path), line=lineno)
        rows[node] = values

    if not rows:
        raise DataError("no feature rows", path=str(path))
    n = max(rows) + 1
    missing = [i for i in range(n) if i not in rows]
    if missing:
        raise DataError(f"missing feature row for node {missing[0]}", path=str(path))
    return np.array([rows[i] for i in range(n)], dtype=np.float64)


def read_labels(path: PathLike, n_nodes: int) -> np.ndarray:
    labels = np.full(n_nodes, -1, dtype=np.int64)
    for lineno, tokens in _read_rows(path):
        if len(tokens) != 2:
            raise DataError("expected 'node_id class_id'", path=str(path), line=lineno)
        node = _parse_int(tokens[0], "node id", path, lineno)
        label = _parse_int(tokens[1], "label", path, lineno)
        if not 0 <= node < n_nodes:
            raise DataError(f"unknown node id {node}", path=str(path), line=lineno)
        if label < 0:
            raise DataError(f"negative label {label}", path=str(path), line=lineno)
        if labels[node] >= 0:
            raise DataError(f"duplicate label for node {node}", path=str(path), line=lineno)
        labels[node] = label
    return labels


def read_edges(path: PathLike, n_nodes: int, directed: bool) -> SparseMatrix:
    weights: dict[tuple[int, int], float] = {}

    def put(src: int, dst: int, weight: float, lineno: int):
        previous = weights.get((src, dst))
        if previous is not None and previous != weight:
            raise DataError(
                f"conflicting weights for edge ({src}, {dst})", path=str(path), line=lineno
            )
        weights[(src, dst)] = weight

    for lineno, tokens in _read_rows(path):
        if len(tokens) not in (2, 3):
            raise DataError("expected 'src dst [weight]'", path=str(path), line=lineno)
        src = _parse_int(tokens[0], "node id", path, lineno)
        dst = _parse_int(tokens[1], "node id", path, lineno)
        weight = _parse_float(tokens[2], "weight", path, lineno) if len(tokens) == 3 else 1.0
        for node in (src, dst):
            if not 0 <= node < n_nodes:
                raise DataError(f"unknown node id {node}", path=str(path), line=lineno)
        if weight < 0:
            raise DataError(f"negative weight {weight}", path=str(path), line=lineno)
        put(src, dst, weight, lineno)
        if not directed:
            put(dst, src, weight, lineno)

    return from_triplets(((s, d, w) for (s, d), w in weights.items()), n_nodes, n_nodes)


def normalize_rows(features: np.ndarray) -> np.ndarray:
    """Divide each row by its L1 norm; all-zero rows are left as they are."""
    norms = np.abs(features).sum(axis=1, keepdims=True)
    return np.divide(features, norms, out=features.copy(), where=norms > 0)


def load_dataset(
    edge_path: PathLike,
    feature_path: PathLike,
    label_path: PathLike,
    directed: bool = False,
    normalize_features: bool = False,
) -> GraphDataset:
    """
    Load a graph from edge, feature and label files.

    The node set is defined by the feature file. Undirected graphs are
    symmetrized: every edge is stored in both directions.
    """
    features = read_features(feature_path)
    n = features.shape[0]
    labels = read_labels(label_path, n)
    adjacency = read_edges(edge_path, n, directed)

    if normalize_features:
        features = normalize_rows(features)

    n_classes = int(labels.max()) + 1 if np.any(labels >= 0) else 0
    logger.info(
        f"Loaded graph: {n} nodes, {adjacency.nnz} stored edges, "
        f"{features.shape[1]} features, {n_classes} classes, {int((labels >= 0).sum())} labeled"
    )
    return GraphDataset(adjacency, DenseMatrix(features), labels, n_classes)


def save_dataset(dataset: GraphDataset, out_dir: PathLike, prefix: str = "") -> dict[str, Path]:
    """
    Write edge/feature/label files readable by load_dataset.

    Symmetric adjacencies are written once per undirected edge; floats use
    repr() so values survive the round trip exactly.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "edges": out_dir / f"{prefix}edges.txt",
        "features": out_dir / f"{prefix}features.txt",
        "labels": out_dir / f"{prefix}labels.txt",
    }

    adjacency = dataset.adjacency
    symmetric = adjacency == adjacency.transpose()
    rows = adjacency.row_ids()
    with open(paths["edges"], "w", encoding="utf-8", newline="\n") as f:
        f.write("# undirected\n" if symmetric else "# directed\n")
        for src, dst, weight in zip(rows.tolist(), adjacency.col_indices.tolist(),
                                    adjacency.values.tolist()):
            if symmetric and dst < src:
                continue
            f.write(f"{src} {dst}\n" if weight == 1.0 else f"{src} {dst} {weight!r}\n")

    with open(paths["features"], "w", encoding="utf-8", newline="\n") as f:
        for node, row in enumerate(dataset.features.values.tolist()):
            f.write(" ".join([str(node)] + [repr(v) for v in row]) + "\n")

    with open(paths["labels"], "w", encoding="utf-8", newline="\n") as f:
        for node, label in enumerate(dataset.labels.tolist()):
            if label >= 0:
                f.write(f"{node} {label}\n")

    return paths
