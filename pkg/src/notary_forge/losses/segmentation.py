"""Per-pixel objectives on N×C×H×W class distributions."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..ndtensor import Tensor, as_tensor, one_hot
from .binary import FocalParams, clamp_probs

DICE_EPS = 1.0


def _check(probs: Tensor, mask) -> np.ndarray:
    mask = np.asarray(mask)
    if probs.ndim != 4:
        raise ValueError(f"expected N×C×H×W probabilities, got shape {probs.shape}")
    if mask.shape != (probs.shape[0],) + probs.shape[2:]:
        raise ValueError(
            f"mask shape {mask.shape} does not match probabilities {probs.shape}"
        )
    return one_hot(mask.astype(np.int64), probs.shape[1], dtype=probs.dtype)


def focal_map(probs, mask, params: FocalParams | None = None) -> Tensor:
    """Multiclass focal loss per pixel, p_t being the probability of the true class."""
    params = params or FocalParams(gamma=1.5)
    probs = as_tensor(probs)
    target = _check(probs, mask)
    p_t = clamp_probs((probs * target).sum(axis=1))
    if isinstance(params.alpha, list):
        if len(params.alpha) != probs.shape[1]:
            raise ValueError(
                f"per-class alpha needs {probs.shape[1]} values, got {params.alpha}"
            )
        weights = np.asarray(params.alpha, dtype=probs.dtype).reshape(1, -1, 1, 1)
        alpha_t = (target * weights).sum(axis=1)
    else:
        alpha_t = params.alpha
    return (-(alpha_t * (1.0 - p_t) ** params.gamma * p_t.log())).mean()


def bce_map(probs, mask) -> Tensor:
    """Binary cross entropy of every channel against the one-hot target."""
    probs = as_tensor(probs)
    target = _check(probs, mask)
    p = clamp_probs(probs)
    return (-(target * p.log() + (1.0 - target) * (1.0 - p).log())).mean()


def dice_weighted(probs, mask, weights: Optional[Sequence[float]] = None) -> Tensor:
    """Class-weighted soft Dice loss, normalised by the weight sum to [0, 1].

    Per class ``d_c = (2 Σ p_c g_c + ε) / (Σ p_c + Σ g_c + ε)`` over the whole
    batch; the loss is ``Σ w_c (1 - d_c) / Σ w_c``.
    """
    probs = as_tensor(probs)
    target = _check(probs, mask)
    n_classes = probs.shape[1]
    w = np.ones(n_classes) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != (n_classes,) or np.any(w <= 0):
        raise ValueError(f"dice weights must be {n_classes} positive values, got {w}")
    axes = (0, 2, 3)
    intersection = (probs * target).sum(axis=axes)
    denominator = probs.sum(axis=axes) + target.sum(axis=axes)
    dice = (2.0 * intersection + DICE_EPS) / (denominator + DICE_EPS)
    w = w.astype(probs.dtype)
    return ((1.0 - dice) * w).sum() * (1.0 / float(w.sum()))
