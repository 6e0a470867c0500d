"""Classification objectives on predicted notary probabilities."""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, Field, field_validator

from ..ndtensor import Tensor, as_tensor

PROB_CLAMP = 1e-7


class FocalParams(BaseModel):
    """Focusing exponent and class weighting of the focal loss.

    ``alpha`` is a single weight, a ``(non_notary, notary)`` pair for the
    binary loss, or one weight per class for the per-pixel loss.
    """

    gamma: float = Field(default=2.0, ge=0.0)
    alpha: Union[float, list[float]] = 1.0

    @field_validator("alpha")
    @classmethod
    def _positive_alpha(cls, value):
        values = value if isinstance(value, list) else [value]
        if not values or any(v <= 0 for v in values):
            raise ValueError(f"alpha must be positive, got {value}")
        return value


def clamp_probs(p: Tensor) -> Tensor:
    return p.clip(PROB_CLAMP, 1.0 - PROB_CLAMP)


def _targets(y, like: Tensor) -> np.ndarray:
    y = np.asarray(y, dtype=like.dtype).reshape(like.shape)
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("binary targets must be 0 or 1")
    return y


def bce_binary(p: Union[Tensor, Sequence[float], float], y) -> Tensor:
    """Mean binary cross entropy ``-[y ln p + (1-y) ln(1-p)]``."""
    p = clamp_probs(as_tensor(p))
    y = _targets(y, p)
    per_sample = -(y * p.log() + (1.0 - y) * (1.0 - p).log())
    return per_sample.mean()


def focal_binary(p, y, params: FocalParams | None = None) -> Tensor:
    """Mean focal loss ``-α_t (1-p_t)^γ ln p_t`` with p_t the true-class probability."""
    params = params or FocalParams()
    p = clamp_probs(as_tensor(p))
    y = _targets(y, p)
    p_t = y * p + (1.0 - y) * (1.0 - p)
    if isinstance(params.alpha, list):
        if len(params.alpha) != 2:
            raise ValueError(
                f"binary focal alpha needs (non_notary, notary), got {params.alpha}"
            )
        alpha_t = y * params.alpha[1] + (1.0 - y) * params.alpha[0]
    else:
        alpha_t = params.alpha
    per_sample = -(alpha_t * (1.0 - p_t) ** params.gamma * p_t.log())
    return per_sample.mean()
