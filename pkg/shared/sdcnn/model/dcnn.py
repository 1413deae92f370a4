"""
Two-layer diffusion-convolutional network.

    A[i,j,k] = W_c[j,k] * diffused[i,j,k]
    Z        = f(A)                              f in {tanh, relu, identity}
    logits   = flatten(Z[i]) @ W_d + bias
    probs    = softmax(logits)

Parameter shapes depend only on (H, F, C), so one model can run on graphs of
any size.
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..errors import InputError, NumericError
from ..kernel import DiffusedFeatures


Activation = Literal["tanh", "relu", "identity"]


@dataclass
class DcnnModel:
    """Diffusion-convolution weights W_c, dense output weights W_d and bias."""

    w_c: np.ndarray
    """(H+1) x F"""
    w_d: np.ndarray
    """((H+1)*F) x C"""
    bias: np.ndarray
    """C"""
    activation: Activation = "tanh"

    def __post_init__(self):
        self.w_c = np.array(self.w_c, dtype=np.float64)
        self.w_d = np.array(self.w_d, dtype=np.float64)
        self.bias = np.array(self.bias, dtype=np.float64)
        if self.w_c.ndim != 2 or self.w_d.ndim != 2 or self.bias.ndim != 1:
            raise InputError("w_c and w_d must be 2-D and bias 1-D")
        if self.w_d.shape != (self.w_c.size, self.bias.shape[0]):
            raise InputError(
                f"w_d has shape {self.w_d.shape}, expected {(self.w_c.size, self.bias.shape[0])}"
            )
        if self.activation not in ("tanh", "relu", "identity"):
            raise InputError(f"unknown activation {self.activation!r}")

    @property
    def n_hops(self) -> int:
        return self.w_c.shape[0] - 1

    @property
    def n_features(self) -> int:
        return self.w_c.shape[1]

    @property
    def n_classes(self) -> int:
        return self.bias.shape[0]

    @property
    def n_parameters(self) -> int:
        return self.w_c.size + self.w_d.size + self.bias.size

    def copy(self) -> "DcnnModel":
        return DcnnModel(self.w_c.copy(), self.w_d.copy(), self.bias.copy(), self.activation)

    def is_finite(self) -> bool:
        return bool(
            np.all(np.isfinite(self.w_c)) and np.all(np.isfinite(self.w_d))
            and np.all(np.isfinite(self.bias))
        )


@dataclass(frozen=True)
class ForwardTrace:
    """Intermediate values of one forward pass."""

    pre_activation: np.ndarray
    """N x (H+1) x F"""
    z: np.ndarray
    """N x (H+1) x F"""
    logits: np.ndarray
    log_probs: np.ndarray

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.log_probs)


@dataclass(frozen=True)
class Gradients:
    d_w_c: np.ndarray
    d_w_d: np.ndarray
    d_bias: np.ndarray


def _glorot(rng: np.random.Generator, shape: tuple[int, int]) -> np.ndarray:
    fan_in, fan_out = shape
    scale = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-scale, scale, size=shape)


def init_model(
    n_hops: int,
    n_features: int,
    n_classes: int,
    seed: int = 0,
    activation: Activation = "tanh",
) -> DcnnModel:
    """Uniform Glorot initialization of W_c and W_d; zero bias."""
    if n_hops < 0 or n_features < 1 or n_classes < 1:
        raise InputError(f"invalid model shape H={n_hops}, F={n_features}, C={n_classes}")
    rng = np.random.default_rng(seed)
    w_c = _glorot(rng, (n_hops + 1, n_features))
    w_d = _glorot(rng, ((n_hops + 1) * n_features, n_classes))
    return DcnnModel(w_c, w_d, np.zeros(n_classes), activation)


def _activate(a: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == "tanh":
        return np.tanh(a)
    if activation == "relu":
        return np.maximum(a, 0.0)
    return a.copy()


def _activation_grad(a: np.ndarray, z: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == "tanh":
        return 1.0 - z * z
    if activation == "relu":
        return (a > 0).astype(np.float64)
    return np.ones_like(a)


def log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def forward(model: DcnnModel, diffused: DiffusedFeatures) -> ForwardTrace:
    """Diffusion-convolution, dense layer and softmax for every node."""
    x = diffused.values
    if x.shape[1:] != model.w_c.shape:
        raise InputError(
            f"diffused features have (H+1, F) = {x.shape[1:]}, model expects {model.w_c.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise NumericError("non-finite diffused features")
    if not model.is_finite():
        raise NumericError("non-finite model weights")

    a = model.w_c[None, :, :] * x
    z = _activate(a, model.activation)
    logits = z.reshape(z.shape[0], -1) @ model.w_d + model.bias
    return ForwardTrace(a, z, logits, log_softmax(logits))


def predict(trace: ForwardTrace) -> np.ndarray:
    """Arg-max class per node; ties go to the lowest class index."""
    return np.argmax(trace.log_probs, axis=1)


def _check_mask(trace: ForwardTrace, labels: np.ndarray, mask: np.ndarray) -> np.ndarray:
    mask = np.asarray(mask, dtype=bool)
    n = trace.logits.shape[0]
    if mask.shape != (n,) or np.asarray(labels).shape != (n,):
        raise InputError(f"labels and mask must have shape ({n},)")
    return mask


def loss(trace: ForwardTrace, labels: np.ndarray, mask: np.ndarray) -> float:
    """Mean negative log-probability of the true class over masked nodes."""
    mask = _check_mask(trace, labels, mask)
    if not mask.any():
        raise InputError("loss over an empty mask")
    rows = np.flatnonzero(mask)
    return float(-trace.log_probs[rows, np.asarray(labels)[rows]].mean())


def backward(
    model: DcnnModel,
    diffused: DiffusedFeatures,
    trace: ForwardTrace,
    labels: np.ndarray,
    mask: np.ndarray,
) -> Gradients:
    """Exact gradients of loss(trace, labels, mask) with respect to every parameter."""
    mask = _check_mask(trace, labels, mask)
    if not mask.any():
        return Gradients(np.zeros_like(model.w_c), np.zeros_like(model.w_d), np.zeros_like(model.bias))

    rows = np.flatnonzero(mask)
    d_logits = np.zeros_like(trace.logits)
    d_logits[rows] = trace.probs[rows]
    d_logits[rows, np.asarray(labels)[rows]] -= 1.0
    d_logits /= rows.size

    n = trace.z.shape[0]
    flat = trace.z.reshape(n, -1)
    d_w_d = flat.T @ d_logits
    d_bias = d_logits.sum(axis=0)

    d_z = (d_logits @ model.w_d.T).reshape(trace.z.shape)
    d_a = d_z * _activation_grad(trace.pre_activation, trace.z, model.activation)
    d_w_c = (d_a * diffused.values).sum(axis=0)
    return Gradients(d_w_c, d_w_d, d_bias)
