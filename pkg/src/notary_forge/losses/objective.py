"""Weighted combinations of loss terms."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from ..errors import ConfigError
from ..ndtensor import Tensor, as_tensor
from .binary import FocalParams, bce_binary, focal_binary
from .segmentation import bce_map, dice_weighted, focal_map

LossKind = Literal["bce", "focal", "dice_weighted"]


class LossTerm(BaseModel):
    kind: LossKind
    weight: float = Field(default=1.0, gt=0.0)


class LossSpec(BaseModel):
    """Objective as ``Σ weight_i · loss_i``.

    Serialized as e.g.
    ``{"terms": [{"kind": "dice_weighted", "weight": 0.5}, {"kind": "bce", "weight": 0.5}]}``.
    ``dice_weights`` stays ``None`` until the trainer fills in the
    inverse class frequencies of its training masks.
    """

    terms: list[LossTerm] = Field(min_length=1)
    focal: FocalParams = Field(default_factory=FocalParams)
    dice_weights: Optional[list[float]] = None

    @field_validator("dice_weights")
    @classmethod
    def _positive_weights(cls, value):
        if value is not None and any(w <= 0 for w in value):
            raise ValueError(f"dice weights must be positive, got {value}")
        return value

    @classmethod
    def single(cls, kind: LossKind, **kwargs) -> "LossSpec":
        return cls(terms=[LossTerm(kind=kind, weight=1.0)], **kwargs)

    @property
    def kinds(self) -> list[str]:
        return [term.kind for term in self.terms]

    @property
    def has_focal(self) -> bool:
        return "focal" in self.kinds

    def scaled(self, factor: float) -> "LossSpec":
        terms = [LossTerm(kind=t.kind, weight=t.weight * factor) for t in self.terms]
        return self.model_copy(update={"terms": terms})


def evaluate_term(spec: LossSpec, kind: str, predictions, targets) -> Tensor:
    """One unweighted term; 4-d predictions are per-pixel class maps."""
    predictions = as_tensor(predictions)
    if predictions.ndim == 4:
        if kind == "bce":
            return bce_map(predictions, targets)
        if kind == "focal":
            return focal_map(predictions, targets, spec.focal)
        return dice_weighted(predictions, targets, spec.dice_weights)
    if kind == "dice_weighted":
        raise ConfigError("dice_weighted needs per-pixel class maps, got binary predictions")
    if kind == "bce":
        return bce_binary(predictions, targets)
    return focal_binary(predictions, targets, spec.focal)


def combine(spec: LossSpec, predictions, targets) -> Tensor:
    total: Optional[Tensor] = None
    for term in spec.terms:
        value = evaluate_term(spec, term.kind, predictions, targets) * term.weight
        total = value if total is None else total + value
    return total
