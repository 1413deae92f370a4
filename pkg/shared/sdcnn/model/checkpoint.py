"""
Model checkpoints as JSON documents with hex-encoded float64 weights.
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from schemas.reports import Checkpoint

from ..errors import DataError
from .dcnn import DcnnModel


logger = logging.getLogger(__name__)


def _encode(array: np.ndarray) -> list[str]:
    return [float(v).hex() for v in array.ravel()]


def _decode(values: list[str], shape: tuple[int, ...], path) -> np.ndarray:
    try:
        flat = np.array([float.fromhex(v) for v in values], dtype=np.float64)
    except ValueError as e:
        raise DataError(f"bad weight encoding: {e}", path=str(path)) from e
    if flat.size != int(np.prod(shape)):
        raise DataError(f"expected {int(np.prod(shape))} weights, got {flat.size}", path=str(path))
    return flat.reshape(shape)


def to_checkpoint(model: DcnnModel, threshold_mode: str, threshold: float) -> Checkpoint:
    return Checkpoint(
        n_hops=model.n_hops,
        n_features=model.n_features,
        n_classes=model.n_classes,
        activation=model.activation,
        threshold_mode=threshold_mode,
        threshold=threshold,
        w_c=_encode(model.w_c),
        w_d=_encode(model.w_d),
        bias=_encode(model.bias),
    )


def save_checkpoint(
    model: DcnnModel,
    path: Union[str, Path],
    threshold_mode: str = "none",
    threshold: float = 0.0,
) -> Path:
    """Write the model with the thresholding it was trained under."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = to_checkpoint(model, threshold_mode, threshold)
    path.write_text(doc.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug(f"Saved checkpoint: {path}")
    return path


def load_checkpoint(path: Union[str, Path]) -> tuple[DcnnModel, Checkpoint]:
    """Read a checkpoint; returns the model and the document (for its threshold settings)."""
    path = Path(path)
    try:
        doc = Checkpoint.model_validate_json(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise DataError("file not found", path=str(path)) from None
    except UnicodeDecodeError:
        raise DataError("not valid UTF-8", path=str(path)) from None
    except OSError as e:
        raise DataError(f"cannot read file: {e}", path=str(path)) from e
    except ValidationError as e:
        raise DataError(f"invalid checkpoint: {e}", path=str(path)) from e

    h, f, c = doc.n_hops + 1, doc.n_features, doc.n_classes
    model = DcnnModel(
        w_c=_decode(doc.w_c, (h, f), path),
        w_d=_decode(doc.w_d, (h * f, c), path),
        bias=_decode(doc.bias, (c,), path),
        activation=doc.activation,
    )
    return model, doc
