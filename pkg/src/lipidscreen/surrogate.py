"""From-scratch MLP surrogate predictor over circular fingerprints.

Architecture: nbits -> h1 -> h2 -> 11 (1 toxicity logit + 10 efficiency
logits), ReLU hidden activations, double precision, plain fixed-lr
gradient descent on the conditional multi-task objective. Training is
fully deterministic given (seed, data, config).
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Optional

import numpy as np

from . import numerics
from .agent_types import PredictorOutput
from .chem import Fingerprint, fingerprint_smiles
from .dataset import LipidRecord
from .trace import render_trace

CHECKPOINT_VERSION = 1


@dataclass
class TrainConfig:
    lr: float = 2e-4
    alpha: float = numerics.DEFAULT_ALPHA
    eps: float = numerics.DEFAULT_EPS
    epochs: int = 50
    batch_size: int = 32
    seed: int = 0
    hidden: tuple[int, int] = (256, 64)
    eval_every: int = 5
    radius: int = 2
    nbits: int = 2048

    def __post_init__(self):
        if self.lr <= 0 or self.eps <= 0:
            raise ValueError("lr and eps must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


@dataclass
class MlpParams:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray
    W3: np.ndarray
    b3: np.ndarray

    @property
    def nbits(self) -> int:
        return self.W1.shape[0]

    def copy(self) -> "MlpParams":
        return MlpParams(*(a.copy() for a in (self.W1, self.b1, self.W2, self.b2, self.W3, self.b3)))


@dataclass
class Checkpoint:
    params: MlpParams
    epoch: int
    val_efficiency_accuracy: float
    val_toxic_accuracy: float
    radius: int
    nbits: int
    config_digest: str


def init_params(nbits: int, hidden: tuple[int, int], seed: int) -> MlpParams:
    rng = np.random.default_rng(seed)
    h1, h2 = hidden
    return MlpParams(
        W1=rng.normal(0.0, np.sqrt(2.0 / nbits), (nbits, h1)),
        b1=np.zeros(h1),
        W2=rng.normal(0.0, np.sqrt(2.0 / h1), (h1, h2)),
        b2=np.zeros(h2),
        W3=rng.normal(0.0, np.sqrt(2.0 / h2), (h2, 11)),
        b3=np.zeros(11),
    )


def forward_batch(params: MlpParams, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batch forward pass; returns (z_tox (N,), z_eff (N, 10))."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != params.nbits:
        raise ValueError(f"input dim {x.shape[-1]} != model input dim {params.nbits}")
    h1 = np.maximum(x @ params.W1 + params.b1, 0.0)
    h2 = np.maximum(h1 @ params.W2 + params.b2, 0.0)
    z = h2 @ params.W3 + params.b3
    return z[..., 0], z[..., 1:]


def forward(params: MlpParams, x: Fingerprint) -> tuple[float, np.ndarray]:
    """Single-sample forward pass; returns (z_tox, z_eff[10])."""
    z_tox, z_eff = forward_batch(params, x.bits.astype(np.float64)[None, :])
    return float(z_tox[0]), z_eff[0]


def _backward(params: MlpParams, x, h1, h2, g_tox, g_eff):
    dz = np.concatenate([g_tox[:, None], g_eff], axis=1)
    grads = {}
    grads["W3"] = h2.T @ dz
    grads["b3"] = dz.sum(axis=0)
    dh2 = (dz @ params.W3.T) * (h2 > 0)
    grads["W2"] = h1.T @ dh2
    grads["b2"] = dh2.sum(axis=0)
    dh1 = (dh2 @ params.W2.T) * (h1 > 0)
    grads["W1"] = x.T @ dh1
    grads["b1"] = dh1.sum(axis=0)
    return grads


def featurize(records: list[LipidRecord], radius: int, nbits: int) -> np.ndarray:
    feats = np.zeros((len(records), nbits))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for i, rec in enumerate(records):
            feats[i] = fingerprint_smiles(rec.smiles, radius=radius, nbits=nbits).bits
    return feats


def _accuracy(params: MlpParams, x: np.ndarray, y_tox: np.ndarray, y_eff: np.ndarray):
    z_tox, z_eff = forward_batch(params, x)
    pred_tox = numerics.sigmoid(z_tox) > 0.5
    tox_acc = float((pred_tox == (y_tox == 1)).mean())
    clean = y_tox == 0
    if clean.any():
        pred_eff = z_eff[clean].argmax(axis=1) + 1
        eff_acc = float(((~pred_tox[clean]) & (pred_eff == y_eff[clean])).mean())
    else:
        eff_acc = 0.0
    return eff_acc, tox_acc


def train(
    train_records: list[LipidRecord],
    val_records: list[LipidRecord],
    config: TrainConfig,
) -> tuple[Checkpoint, list[dict]]:
    """Minibatch gradient descent; returns the best-validation checkpoint
    (ties: higher toxic accuracy, then earlier epoch) and per-epoch history."""
    if not train_records:
        raise ValueError("empty train set")
    if all(r.toxic for r in train_records):
        warnings.warn("all-toxic train set: the efficiency head will stay untrained")
    for rec in train_records + val_records:
        if not rec.toxic and rec.efficiency_score is None:
            raise ValueError(f"non-toxic record {rec.id!r} has no efficiency score")

    x = featurize(train_records, config.radius, config.nbits)
    y_tox = np.array([1 if r.toxic else 0 for r in train_records])
    y_eff = np.array([r.efficiency_score or 1 for r in train_records])
    xv = featurize(val_records, config.radius, config.nbits)
    yv_tox = np.array([1 if r.toxic else 0 for r in val_records])
    yv_eff = np.array([r.efficiency_score or 1 for r in val_records])

    params = init_params(config.nbits, config.hidden, config.seed)
    rng = np.random.default_rng(config.seed + 1)
    n = len(train_records)
    history: list[dict] = []
    best: Optional[Checkpoint] = None

    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, config.batch_size):
            idx = order[start : start + config.batch_size]
            xb = x[idx]
            h1 = np.maximum(xb @ params.W1 + params.b1, 0.0)
            h2 = np.maximum(h1 @ params.W2 + params.b2, 0.0)
            z = h2 @ params.W3 + params.b3
            z_tox, z_eff = z[:, 0], z[:, 1:]
            breakdown = numerics.total_loss(
                z_tox, z_eff, y_tox[idx], y_eff[idx], alpha=config.alpha, eps=config.eps
            )
            epoch_loss += breakdown.l_total * len(idx)
            g_tox, g_eff = numerics.loss_gradients(
                z_tox, z_eff, y_tox[idx], y_eff[idx], alpha=config.alpha, eps=config.eps
            )
            grads = _backward(params, xb, h1, h2, g_tox, g_eff)
            for name, g in grads.items():
                arr = getattr(params, name)
                arr -= config.lr * g

        entry = {"epoch": epoch, "train_loss": epoch_loss / n}
        if epoch % config.eval_every == 0 or epoch == config.epochs:
            eff_acc, tox_acc = _accuracy(params, xv, yv_tox, yv_eff) if len(val_records) else (0.0, 0.0)
            entry["val_efficiency_accuracy"] = eff_acc
            entry["val_toxic_accuracy"] = tox_acc
            candidate = Checkpoint(
                params=params.copy(),
                epoch=epoch,
                val_efficiency_accuracy=eff_acc,
                val_toxic_accuracy=tox_acc,
                radius=config.radius,
                nbits=config.nbits,
                config_digest=config.digest(),
            )
            if best is None or (
                eff_acc,
                tox_acc,
                -epoch,
            ) > (best.val_efficiency_accuracy, best.val_toxic_accuracy, -best.epoch):
                best = candidate
        history.append(entry)

    assert best is not None
    return best, history


def predict(
    params: MlpParams,
    x: Fingerprint,
    feedback_rounds: int = 0,
) -> PredictorOutput:
    """Run the safety-gated prediction: a toxic verdict halts efficiency
    prediction entirely."""
    z_tox, z_eff = forward(params, x)
    p_tox = float(numerics.sigmoid(z_tox))
    if p_tox > 0.5:
        trace = render_trace(
            toxic=True, conf=p_tox, margin=z_tox, feedback_rounds=feedback_rounds
        )
        return PredictorOutput(
            y_tox=True, r_pred=trace, conf=p_tox, round=feedback_rounds + 1
        )
    p_eff = numerics.softmax(z_eff)
    score = int(p_eff.argmax()) + 1  # lowest class index wins ties
    conf = numerics.confidence(p_eff)
    on_bits = x.on_bits()
    contrib = sorted(
        on_bits, key=lambda b: -float(np.abs(params.W1[b]).sum())
    )[:5]
    trace = render_trace(
        toxic=False,
        conf=conf,
        margin=z_tox,
        score=score,
        distribution=[float(p) for p in p_eff],
        top_features=contrib,
        feedback_rounds=feedback_rounds,
    )
    return PredictorOutput(
        y_tox=False,
        y_eff=score,
        r_pred=trace,
        conf=conf,
        p_eff=[float(p) for p in p_eff],
        round=feedback_rounds + 1,
    )


def save_checkpoint(ckpt: Checkpoint, path: str | Path) -> None:
    meta = {
        "version": CHECKPOINT_VERSION,
        "epoch": ckpt.epoch,
        "val_efficiency_accuracy": ckpt.val_efficiency_accuracy,
        "val_toxic_accuracy": ckpt.val_toxic_accuracy,
        "radius": ckpt.radius,
        "nbits": ckpt.nbits,
        "config_digest": ckpt.config_digest,
    }
    p = ckpt.params
    np.savez(
        path,
        W1=p.W1, b1=p.b1, W2=p.W2, b2=p.b2, W3=p.W3, b3=p.b3,
        meta=np.frombuffer(json.dumps(meta, sort_keys=True).encode(), dtype=np.uint8),
    )


def load_checkpoint(path: str | Path) -> Checkpoint:
    with np.load(path) as data:
        meta = json.loads(bytes(data["meta"]).decode())
        if meta.get("version") != CHECKPOINT_VERSION:
            raise ValueError(
                f"checkpoint version {meta.get('version')} != supported {CHECKPOINT_VERSION}"
            )
        params = MlpParams(
            W1=data["W1"], b1=data["b1"],
            W2=data["W2"], b2=data["b2"],
            W3=data["W3"], b3=data["b3"],
        )
    return Checkpoint(
        params=params,
        epoch=int(meta["epoch"]),
        val_efficiency_accuracy=float(meta["val_efficiency_accuracy"]),
        val_toxic_accuracy=float(meta["val_toxic_accuracy"]),
        radius=int(meta["radius"]),
        nbits=int(meta["nbits"]),
        config_digest=meta["config_digest"],
    )
