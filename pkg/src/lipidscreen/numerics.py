"""Conditional multi-task loss, entropy confidence, and exact gradients.

All math is double precision. The toxicity head is a scalar logit trained
with mean binary cross-entropy; the 10-class efficiency head is trained
with cross-entropy masked to non-toxic samples and normalized by the mask
count (plus a small stability constant). Natural log throughout; any
consistent base gives the same confidence after normalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

N_CLASSES = 10
DEFAULT_ALPHA = 0.1
DEFAULT_EPS = 1e-8
MAX_ENTROPY = float(np.log(N_CLASSES))


@dataclass
class LossBreakdown:
    l_tox: float
    l_eff: float
    l_total: float
    mask_count: int


def _check_batch(z_tox: np.ndarray, z_eff: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    z_tox = np.asarray(z_tox, dtype=np.float64)
    z_eff = np.asarray(z_eff, dtype=np.float64)
    if z_tox.ndim != 1 or z_tox.size == 0:
        raise ValueError("empty batch")
    if z_eff.shape != (z_tox.size, N_CLASSES):
        raise ValueError(f"z_eff must have shape (N, {N_CLASSES}), got {z_eff.shape}")
    return z_tox, z_eff


def toxicity_loss(z_tox: np.ndarray, y_tox: np.ndarray) -> float:
    """Mean binary cross-entropy of sigmoid(z_tox) against binary labels,
    in the stable softplus form."""
    z = np.asarray(z_tox, dtype=np.float64)
    if z.ndim != 1 or z.size == 0:
        raise ValueError("empty batch")
    y = np.asarray(y_tox, dtype=np.float64)
    # -[y log sig(z) + (1-y) log(1-sig(z))] = y*softplus(-z) + (1-y)*softplus(z)
    per = y * np.logaddexp(0.0, -z) + (1.0 - y) * np.logaddexp(0.0, z)
    return float(per.mean())


def _masked_ce_terms(z_eff: np.ndarray, y_eff: np.ndarray, mask: np.ndarray) -> np.ndarray:
    lse = np.logaddexp.reduce(z_eff, axis=1)
    idx = np.where(mask, np.asarray(y_eff, dtype=np.int64) - 1, 0)
    true_logit = z_eff[np.arange(z_eff.shape[0]), idx]
    return np.where(mask, lse - true_logit, 0.0)


def efficiency_loss(
    z_eff: np.ndarray,
    y_eff: np.ndarray,
    y_tox: np.ndarray,
    eps: float = DEFAULT_EPS,
) -> float:
    """Cross-entropy over non-toxic samples only: sum(m_i CE_i) / (sum m_i + eps)."""
    z = np.asarray(z_eff, dtype=np.float64)
    if z.ndim != 2 or z.shape[0] == 0 or z.shape[1] != N_CLASSES:
        raise ValueError(f"z_eff must have shape (N, {N_CLASSES})")
    y_tox = np.asarray(y_tox)
    mask = y_tox == 0
    y_eff = np.asarray(y_eff)
    if np.any(mask):
        labels = y_eff[mask]
        if np.any((labels < 1) | (labels > N_CLASSES)):
            raise ValueError("non-toxic sample with efficiency label outside [1, 10]")
    terms = _masked_ce_terms(z, y_eff, mask)
    return float(terms.sum() / (mask.sum() + eps))


def total_loss(
    z_tox: np.ndarray,
    z_eff: np.ndarray,
    y_tox: np.ndarray,
    y_eff: np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    eps: float = DEFAULT_EPS,
) -> LossBreakdown:
    z_tox, z_eff = _check_batch(z_tox, z_eff)
    l_tox = toxicity_loss(z_tox, y_tox)
    l_eff = efficiency_loss(z_eff, y_eff, y_tox, eps=eps)
    return LossBreakdown(
        l_tox=l_tox,
        l_eff=l_eff,
        l_total=l_tox + alpha * l_eff,
        mask_count=int((np.asarray(y_tox) == 0).sum()),
    )


def loss_gradients(
    z_tox: np.ndarray,
    z_eff: np.ndarray,
    y_tox: np.ndarray,
    y_eff: np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    eps: float = DEFAULT_EPS,
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic gradients of the total loss w.r.t. both logit heads.

    d/dz_tox = (sigmoid(z) - y) / N
    d/dz_eff = alpha * m_i * (softmax(z_eff) - onehot(y_eff)) / (sum m + eps)
    """
    z_tox, z_eff = _check_batch(z_tox, z_eff)
    y_tox_arr = np.asarray(y_tox, dtype=np.float64)
    n = z_tox.size
    g_tox = (1.0 / (1.0 + np.exp(-z_tox)) - y_tox_arr) / n

    mask = np.asarray(y_tox) == 0
    shifted = z_eff - z_eff.max(axis=1, keepdims=True)
    p = np.exp(shifted)
    p /= p.sum(axis=1, keepdims=True)
    g_eff = p.copy()
    idx = np.where(mask, np.asarray(y_eff, dtype=np.int64) - 1, 0)
    g_eff[np.arange(n), idx] -= 1.0
    g_eff *= mask[:, None].astype(np.float64)
    g_eff *= alpha / (mask.sum() + eps)
    return g_tox, g_eff


def softmax(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    shifted = z - z.max(axis=-1, keepdims=True)
    p = np.exp(shifted)
    return p / p.sum(axis=-1, keepdims=True)


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.asarray(z, dtype=np.float64)))


def _check_simplex(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (N_CLASSES,):
        raise ValueError(f"probability vector must have length {N_CLASSES}")
    if np.any(p < -1e-9) or abs(p.sum() - 1.0) > 1e-9:
        raise ValueError("probability vector is off the simplex")
    return np.clip(p, 0.0, 1.0)


def entropy(p: np.ndarray) -> float:
    """Shannon entropy in nats with 0 log 0 = 0; range [0, ln 10]."""
    p = _check_simplex(p)
    nz = p[p > 0.0]
    return float(-(nz * np.log(nz)).sum())


def confidence(p: np.ndarray) -> float:
    """1 - H(p)/ln 10, clamped to [0, 1]."""
    return float(np.clip(1.0 - entropy(p) / MAX_ENTROPY, 0.0, 1.0))
