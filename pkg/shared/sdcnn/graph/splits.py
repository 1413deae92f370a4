"""
Stratified train/valid/test splits.
"""

import logging

import numpy as np

from schemas.config import SplitConfig

from ..errors import ConfigError
from .dataset import GraphDataset


logger = logging.getLogger(__name__)


def _round(x: float) -> int:
    return int(np.floor(x + 0.5))


def make_splits(dataset: GraphDataset, config: SplitConfig) -> GraphDataset:
    """
    Partition the labeled nodes class by class.

    Each class contributes round(n_c * fraction) nodes to train and valid
    (at least one to train) and the rest to test. The result depends only on
    the labels and config.seed.
    """
    rng = np.random.default_rng(config.seed)
    n = dataset.n_nodes
    train = np.zeros(n, dtype=bool)
    valid = np.zeros(n, dtype=bool)
    test = np.zeros(n, dtype=bool)

    for c in range(dataset.n_classes):
        members = np.flatnonzero(dataset.labels == c)
        if members.size == 0:
            raise ConfigError(f"class {c} has no labeled nodes, so no training members")
        members = rng.permutation(members)
        n_train = max(1, _round(members.size * config.train_fraction))
        n_valid = min(_round(members.size * config.valid_fraction), members.size - n_train)
        train[members[:n_train]] = True
        valid[members[n_train:n_train + n_valid]] = True
        test[members[n_train + n_valid:]] = True

    logger.debug(f"Split sizes: train={train.sum()} valid={valid.sum()} test={test.sum()}")
    return dataset.with_masks(train, valid, test)
