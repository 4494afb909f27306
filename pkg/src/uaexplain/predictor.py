"""Feedforward regression network with dropout, written on plain numpy.

Training uses mini-batch backprop (SGD or Adam) with inverted dropout, so
deterministic inference needs no rescaling.  Stochastic inference re-enables
dropout with masks derived from counter-style seeds (see ``seeding``): the
mask of pass ``t``, hidden layer ``l``, unit ``j`` is a pure function of
``(sample_seed, t, l, j)``.  Batched evaluation therefore reproduces
single-instance evaluation bit for bit, which the explanation oracles rely
on.

Inference matrix products are computed with an explicit accumulation loop
(`_affine`) instead of BLAS: BLAS kernels change summation order with the
batch size, which would break that bit-level equivalence.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .dataset import NormStats, Schema
from .seeding import dropout_uniforms, mix


class PredictorError(ValueError):
    pass


class BadArch(PredictorError):
    pass


class DimMismatch(PredictorError):
    pass


class EmptyTrainSet(PredictorError):
    pass


class CorruptCheckpoint(PredictorError):
    pass


@dataclass(frozen=True)
class NetworkArch:
    input_dim: int
    hidden: tuple = (64, 64)
    activation: str = "relu"  # relu | tanh
    dropout_rate: float = 0.1

    def __post_init__(self):
        object.__setattr__(self, "hidden", tuple(int(w) for w in self.hidden))
        if self.input_dim < 1:
            raise BadArch("input_dim must be >= 1")
        if any(w < 1 for w in self.hidden):
            raise BadArch("hidden layer widths must be >= 1")
        if self.activation not in ("relu", "tanh"):
            raise BadArch(f"unknown activation {self.activation!r}")
        if not (0.0 <= self.dropout_rate < 1.0):
            raise BadArch("dropout_rate must lie in [0, 1)")

    @property
    def layer_dims(self):
        return [self.input_dim, *self.hidden, 1]


@dataclass
class Predictor:
    arch: NetworkArch
    weights: list  # per layer, shape (fan_in, fan_out)
    biases: list  # per layer, shape (fan_out,)
    norm_stats: NormStats | None = None
    schema: Schema | None = None

    def __post_init__(self):
        dims = self.arch.layer_dims
        if len(self.weights) != len(dims) - 1 or len(self.biases) != len(dims) - 1:
            raise BadArch("layer count does not match architecture")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (dims[i], dims[i + 1]) or b.shape != (dims[i + 1],):
                raise BadArch(f"layer {i}: parameter shape mismatch")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise BadArch(f"layer {i}: non-finite parameters")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 200
    batch_size: int = 32
    learning_rate: float = 1e-3
    optimizer: str = "adam"  # adam | sgd
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 0:
            raise PredictorError("epochs must be >= 0")
        if self.batch_size < 1:
            raise PredictorError("batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise PredictorError("learning_rate must be positive")
        if self.optimizer not in ("adam", "sgd"):
            raise PredictorError(f"unknown optimizer {self.optimizer!r}")


@dataclass(frozen=True)
class McSamples:
    """The T stochastic predictions of one instance, in pass order."""

    values: np.ndarray
    T: int
    seed: int
    instance_id: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))
        if self.values.shape != (self.T,) or self.T < 1:
            raise PredictorError("McSamples needs exactly T >= 1 values")
        if not np.all(np.isfinite(self.values)):
            raise PredictorError("non-finite MC sample")


def init_predictor(arch: NetworkArch, seed: int, norm_stats=None, schema=None) -> Predictor:
    """Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases."""
    rng = np.random.default_rng(seed)
    dims = arch.layer_dims
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        limit = math.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return Predictor(arch, weights, biases, norm_stats=norm_stats, schema=schema)


def _affine(X: np.ndarray, W: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Fixed-order accumulation; row i of a batch equals the same row evaluated
    # alone, which BLAS does not guarantee.
    out = np.tile(b, (X.shape[0], 1))
    for k in range(W.shape[0]):
        out += X[:, k, None] * W[k]
    return out


def _activate(z: np.ndarray, activation: str) -> np.ndarray:
    if activation == "relu":
        return np.maximum(z, 0.0)
    return np.tanh(z)


def _forward_matrix(p: Predictor, X: np.ndarray, pass_index=None, sample_seeds=None) -> np.ndarray:
    """Shared inference path; stochastic when ``sample_seeds`` is given."""
    if X.ndim != 2 or X.shape[1] != p.arch.input_dim:
        raise DimMismatch(f"expected input dim {p.arch.input_dim}, got {X.shape}")
    keep = 1.0 - p.arch.dropout_rate
    h = X
    n_layers = len(p.weights)
    for l in range(n_layers):
        h = _affine(h, p.weights[l], p.biases[l])
        if l < n_layers - 1:
            h = _activate(h, p.arch.activation)
            if sample_seeds is not None and p.arch.dropout_rate > 0.0:
                u = dropout_uniforms(sample_seeds, pass_index, l, h.shape[1])
                h = h * ((u < keep).astype(np.float64) * (1.0 / keep))
    return h[:, 0]


def predict(p: Predictor, X: np.ndarray) -> np.ndarray:
    """Deterministic predictions for an encoded matrix, shape (n,)."""
    return _forward_matrix(p, np.asarray(X, dtype=np.float64))


def forward(p: Predictor, x: np.ndarray, sample_seed: int | None = None,
            pass_index: int = 0) -> float:
    """One prediction; dropout masks are drawn when ``sample_seed`` is given."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimMismatch("forward expects a single encoded vector")
    if sample_seed is None:
        return float(_forward_matrix(p, x[None, :])[0])
    seeds = np.array([sample_seed], dtype=np.uint64)
    return float(_forward_matrix(p, x[None, :], pass_index=pass_index, sample_seeds=seeds)[0])


def mc_samples_matrix(p: Predictor, X: np.ndarray, T: int, sample_seeds) -> np.ndarray:
    """T stochastic passes for each row; returns shape (n, T).

    Row ``i`` is bit-identical to ``mc_sample(p, X[i], T, sample_seeds[i])``
    because each dropout mask depends only on that row's seed and indices.
    """
    if T < 1:
        raise PredictorError("T must be >= 1")
    X = np.asarray(X, dtype=np.float64)
    seeds = np.asarray(sample_seeds, dtype=np.uint64)
    if seeds.shape != (X.shape[0],):
        raise DimMismatch("one sample seed per row is required")
    out = np.empty((X.shape[0], T), dtype=np.float64)
    for t in range(T):
        out[:, t] = _forward_matrix(p, X, pass_index=t, sample_seeds=seeds)
    return out


def mc_sample(p: Predictor, x: np.ndarray, T: int, seed: int,
              instance_id: str | None = None) -> McSamples:
    """T stochastic forward passes; pass t draws its masks from (seed, t)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimMismatch("mc_sample expects a single encoded vector")
    values = mc_samples_matrix(p, x[None, :], T, np.array([seed], dtype=np.uint64))[0]
    return McSamples(values=values, T=T, seed=seed, instance_id=instance_id)


def _act_grad(a: np.ndarray, activation: str) -> np.ndarray:
    if activation == "relu":
        return (a > 0.0).astype(np.float64)
    return 1.0 - a * a


def _forward_backward(weights, biases, activation, X, y, masks):
    """Batch MSE loss and parameter gradients; ``masks`` may be None."""
    n_layers = len(weights)
    hs = [X]
    acts = []
    h = X
    for l in range(n_layers):
        z = h @ weights[l] + biases[l]
        if l < n_layers - 1:
            a = _activate(z, activation)
            acts.append(a)
            h = a if masks is None else a * masks[l]
        else:
            h = z
        hs.append(h)
    pred = hs[-1][:, 0]
    err = pred - y
    loss = float(np.mean(err * err))

    grads_w = [None] * n_layers
    grads_b = [None] * n_layers
    delta = (2.0 * err / X.shape[0])[:, None]
    for l in range(n_layers - 1, -1, -1):
        grads_w[l] = hs[l].T @ delta
        grads_b[l] = delta.sum(axis=0)
        if l > 0:
            dh = delta @ weights[l].T
            if masks is not None:
                dh = dh * masks[l - 1]
            delta = dh * _act_grad(acts[l - 1], activation)
    return loss, grads_w, grads_b


def mse_loss(p: Predictor, X: np.ndarray, y: np.ndarray) -> float:
    err = predict(p, X) - np.asarray(y, dtype=np.float64)
    return float(np.mean(err * err))


def mse_gradients(p: Predictor, X: np.ndarray, y: np.ndarray):
    """Analytic MSE gradients with dropout disabled (for gradient checks)."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _, gw, gb = _forward_backward(p.weights, p.biases, p.arch.activation, X, y, masks=None)
    return gw, gb


def train(p: Predictor, train_set, val_set, cfg: TrainConfig):
    """Mini-batch training; returns a new predictor plus per-epoch history.

    ``train_set``/``val_set`` are (X, y) tuples of encoded inputs and targets.
    Epoch-end MSEs are computed in deterministic mode.  ``epochs=0`` returns
    an untouched copy and an empty history.
    """
    X, y = train_set
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.shape[0] == 0:
        raise EmptyTrainSet("training set is empty")
    if X.ndim != 2 or X.shape[1] != p.arch.input_dim:
        raise DimMismatch(f"expected input dim {p.arch.input_dim}, got {X.shape}")
    has_val = val_set is not None and len(val_set[0]) > 0
    if has_val:
        Xv = np.asarray(val_set[0], dtype=np.float64)
        yv = np.asarray(val_set[1], dtype=np.float64)

    weights = [w.copy() for w in p.weights]
    biases = [b.copy() for b in p.biases]
    out = Predictor(p.arch, weights, biases, norm_stats=p.norm_stats, schema=p.schema)
    history = []
    if cfg.epochs == 0:
        return out, history

    rng = np.random.default_rng(cfg.seed)
    keep = 1.0 - p.arch.dropout_rate
    adam_m = [np.zeros_like(w) for w in weights] + [np.zeros_like(b) for b in biases]
    adam_v = [np.zeros_like(w) for w in weights] + [np.zeros_like(b) for b in biases]
    step = 0

    for _epoch in range(cfg.epochs):
        order = rng.permutation(X.shape[0])
        for start in range(0, X.shape[0], cfg.batch_size):
            idx = order[start:start + cfg.batch_size]
            Xb, yb = X[idx], y[idx]
            masks = None
            if p.arch.dropout_rate > 0.0:
                masks = [(rng.random((Xb.shape[0], w)) < keep).astype(np.float64) / keep
                         for w in p.arch.hidden]
            _, gw, gb = _forward_backward(weights, biases, p.arch.activation, Xb, yb, masks)
            params = weights + biases
            grads = gw + gb
            step += 1
            if cfg.optimizer == "sgd":
                for prm, g in zip(params, grads):
                    prm -= cfg.learning_rate * g
            else:
                bc1 = 1.0 - cfg.beta1 ** step
                bc2 = 1.0 - cfg.beta2 ** step
                for j, (prm, g) in enumerate(zip(params, grads)):
                    adam_m[j] = cfg.beta1 * adam_m[j] + (1.0 - cfg.beta1) * g
                    adam_v[j] = cfg.beta2 * adam_v[j] + (1.0 - cfg.beta2) * (g * g)
                    prm -= cfg.learning_rate * (adam_m[j] / bc1) / (np.sqrt(adam_v[j] / bc2) + cfg.eps)
        history.append({
            "train_mse": mse_loss(out, X, y),
            "val_mse": mse_loss(out, Xv, yv) if has_val else float("nan"),
        })
    return out, history


_CHECKPOINT_FORMAT = "uaexplain-checkpoint-v1"


def save_predictor(p: Predictor) -> bytes:
    """Serialize to JSON bytes; round-trips predictions bit-exactly."""
    obj = {
        "format": _CHECKPOINT_FORMAT,
        "arch": {
            "input_dim": p.arch.input_dim,
            "hidden": list(p.arch.hidden),
            "activation": p.arch.activation,
            "dropout_rate": p.arch.dropout_rate,
        },
        "norm_stats": p.norm_stats.to_dict() if p.norm_stats is not None else None,
        "schema": p.schema.to_dict() if p.schema is not None else None,
        "weights": [w.tolist() for w in p.weights],
        "biases": [b.tolist() for b in p.biases],
    }
    return json.dumps(obj).encode("utf-8")


def load_predictor(data) -> Predictor:
    if isinstance(data, (bytes, bytearray)):
        data = bytes(data).decode("utf-8", errors="strict")
    try:
        obj = json.loads(data)
        if obj.get("format") != _CHECKPOINT_FORMAT:
            raise CorruptCheckpoint(f"unexpected checkpoint format {obj.get('format')!r}")
        arch = NetworkArch(
            input_dim=int(obj["arch"]["input_dim"]),
            hidden=tuple(obj["arch"]["hidden"]),
            activation=obj["arch"]["activation"],
            dropout_rate=float(obj["arch"]["dropout_rate"]),
        )
        weights = [np.asarray(w, dtype=np.float64) for w in obj["weights"]]
        biases = [np.asarray(b, dtype=np.float64) for b in obj["biases"]]
        norm = NormStats.from_dict(obj["norm_stats"]) if obj.get("norm_stats") else None
        schema = Schema.from_dict(obj["schema"]) if obj.get("schema") else None
        return Predictor(arch, weights, biases, norm_stats=norm, schema=schema)
    except CorruptCheckpoint:
        raise
    except Exception as exc:
        raise CorruptCheckpoint(f"cannot load checkpoint: {exc}") from exc
