"""Optimizer, schedule and duration of one training run."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Literal, Optional

from ..errors import ConfigError

StepUnit = Literal["iterations", "epochs"]


@dataclass
class TrainConfig:
    """Adam hyper-parameters, step-decay schedule, batch size and run length.

    ``duration`` and ``step_size`` are both counted in ``step_unit``.
    """

    initial_lr: float
    lr_decay: float
    step_size: int
    step_unit: StepUnit
    batch_size: int
    duration: int
    seed: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    log_every: int = 50
    focal_lr: Optional[float] = None

    def __post_init__(self):
        if self.initial_lr <= 0:
            raise ConfigError(f"initial_lr must be positive, got {self.initial_lr}")
        if not 0 < self.lr_decay < 1:
            raise ConfigError(f"lr_decay must lie in (0, 1), got {self.lr_decay}")
        if self.step_size <= 0:
            raise ConfigError(f"step_size must be positive, got {self.step_size}")
        if self.step_unit not in ("iterations", "epochs"):
            raise ConfigError(f"step_unit must be iterations or epochs, got {self.step_unit}")
        if self.batch_size < 1:
            raise ConfigError(f"batch_size must be at least 1, got {self.batch_size}")
        if self.duration < 0:
            raise ConfigError(f"duration must be non-negative, got {self.duration}")
        if self.focal_lr is not None and self.focal_lr <= 0:
            raise ConfigError(f"focal_lr must be positive, got {self.focal_lr}")
        if not (0 <= self.beta1 < 1 and 0 <= self.beta2 < 1):
            raise ConfigError(f"Adam betas must lie in [0, 1), got {self.beta1}, {self.beta2}")

    @classmethod
    def classification(cls, focal: bool = False, **overrides) -> "TrainConfig":
        """Desk-scale classifier training: 600 iterations of 16 images."""
        base = cls(
            initial_lr=5e-4 if focal else 1e-3,
            focal_lr=5e-4,
            lr_decay=0.5,
            step_size=250,
            step_unit="iterations",
            batch_size=16,
            duration=600,
        )
        return replace(base, **overrides)

    @classmethod
    def segmentation(cls, focal: bool = False, **overrides) -> "TrainConfig":
        """Desk-scale segmenter training: 30 epochs of batches of 8."""
        base = cls(
            initial_lr=1e-3 if focal else 3e-3,
            focal_lr=1e-3,
            lr_decay=0.3,
            step_size=10,
            step_unit="epochs",
            batch_size=8,
            duration=30,
            log_every=1,
        )
        return replace(base, **overrides)

    def for_loss(self, has_focal: bool) -> "TrainConfig":
        """Switch to ``focal_lr`` when the objective contains a focal term."""
        if has_focal and self.focal_lr is not None:
            return replace(self, initial_lr=self.focal_lr)
        return self

    def with_overrides(self, **overrides) -> "TrainConfig":
        return replace(self, **overrides)

    def to_dict(self) -> dict:
        return asdict(self)
