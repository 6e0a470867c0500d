"""Experiment settings and the built-in classification and segmentation grids."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ..errors import ConfigError
from ..losses import FocalParams, LossSpec, LossTerm

Task = Literal["classification", "segmentation"]
AugmentationLevel = Literal["none", "weak", "moderate", "heavy"]

TASK_ALIASES = {"cls": "classification", "seg": "segmentation"}
CLASSIFICATION_FOCAL = FocalParams(gamma=2.0)
SEGMENTATION_FOCAL = FocalParams(gamma=1.5)


class ExperimentSetting(BaseModel):
    """One row of a training grid.

    ``swap`` and ``sampling`` belong to classification, ``meaningful_segments``
    to segmentation; setting a field of the other task is an error. Unset
    fields of the own task take their neutral default.
    """

    task: Task
    id: int = Field(ge=1)
    augmentation: AugmentationLevel = "none"
    loss: LossSpec
    swap: Optional[Literal["none", "swap", "swap_and_add"]] = None
    sampling: Optional[Literal["natural", "oversample", "undersample"]] = None
    meaningful_segments: Optional[bool] = None
    model: Optional[Literal["residual", "dense", "unet5"]] = None

    @model_validator(mode="after")
    def _task_fields(self) -> "ExperimentSetting":
        if self.task == "classification":
            if self.meaningful_segments is not None:
                raise ValueError("meaningful_segments is a segmentation field")
            if self.model == "unet5":
                raise ValueError("classification needs a residual or dense model")
            if "dice_weighted" in self.loss.kinds:
                raise ValueError("dice_weighted needs per-pixel targets")
            self.swap = self.swap or "none"
            self.sampling = self.sampling or "natural"
            self.model = self.model or "dense"
        else:
            if self.swap is not None or self.sampling is not None:
                raise ValueError("swap and sampling are classification fields")
            if self.model not in (None, "unet5"):
                raise ValueError(f"segmentation uses the unet5 model, got {self.model}")
            self.meaningful_segments = bool(self.meaningful_segments)
            self.model = "unet5"
        return self

    @property
    def label(self) -> str:
        return f"{self.task}-{self.id:02d}"

    def with_model(self, model: str) -> "ExperimentSetting":
        return ExperimentSetting.model_validate({**self.model_dump(), "model": model})


def _loss(*terms: tuple[str, float], focal: FocalParams) -> LossSpec:
    return LossSpec(terms=[LossTerm(kind=k, weight=w) for k, w in terms], focal=focal)


def _cls(id: int, sampling: str, augmentation: str, swap: str, loss: str) -> ExperimentSetting:
    return ExperimentSetting(
        task="classification",
        id=id,
        sampling=sampling,
        augmentation=augmentation,
        swap=swap,
        loss=_loss((loss, 1.0), focal=CLASSIFICATION_FOCAL),
    )


def _seg(id: int, augmentation: str, *terms: tuple[str, float], segments: bool = False):
    return ExperimentSetting(
        task="segmentation",
        id=id,
        augmentation=augmentation,
        loss=_loss(*terms, focal=SEGMENTATION_FOCAL),
        meaningful_segments=segments,
    )


CLASSIFICATION_GRID: dict[int, ExperimentSetting] = {
    s.id: s
    for s in (
        _cls(1, "natural", "none", "none", "bce"),
        _cls(2, "oversample", "none", "none", "bce"),
        _cls(3, "oversample", "weak", "none", "bce"),
        _cls(4, "oversample", "moderate", "none", "bce"),
        _cls(5, "oversample", "heavy", "none", "bce"),
        _cls(6, "undersample", "moderate", "none", "bce"),
        _cls(7, "oversample", "none", "swap_and_add", "bce"),
        _cls(8, "oversample", "moderate", "swap_and_add", "bce"),
        _cls(9, "oversample", "moderate", "swap", "bce"),
        _cls(10, "natural", "moderate", "none", "focal"),
        _cls(11, "natural", "moderate", "swap_and_add", "focal"),
        _cls(12, "oversample", "moderate", "swap", "focal"),
    )
}

SEGMENTATION_GRID: dict[int, ExperimentSetting] = {
    s.id: s
    for s in (
        _seg(1, "none", ("focal", 1.0)),
        _seg(2, "weak", ("focal", 1.0)),
        _seg(3, "moderate", ("focal", 1.0)),
        _seg(4, "heavy", ("focal", 1.0)),
        _seg(5, "moderate", ("dice_weighted", 1.0)),
        _seg(6, "moderate", ("bce", 1.0)),
        _seg(7, "moderate", ("dice_weighted", 0.5), ("bce", 0.5)),
        _seg(8, "moderate", ("focal", 0.5), ("bce", 0.5)),
        _seg(9, "moderate", ("focal", 0.5), ("dice_weighted", 0.5)),
        _seg(10, "moderate", ("focal", 0.33), ("dice_weighted", 0.33), ("bce", 0.33)),
        _seg(11, "moderate", ("bce", 1.0), segments=True),
        _seg(12, "moderate", ("dice_weighted", 1.0), segments=True),
        _seg(13, "moderate", ("focal", 1.0), segments=True),
    )
}

GRIDS = {"classification": CLASSIFICATION_GRID, "segmentation": SEGMENTATION_GRID}


def resolve_task(task: str) -> str:
    name = TASK_ALIASES.get(task.lower(), task.lower())
    if name not in GRIDS:
        raise ConfigError(f"Unknown task: {task}")
    return name


def get_setting(task: str, setting_id: int) -> ExperimentSetting:
    grid = GRIDS[resolve_task(task)]
    if setting_id not in grid:
        raise ConfigError(f"{task} grid has settings 1..{len(grid)}, got {setting_id}")
    return grid[setting_id]
