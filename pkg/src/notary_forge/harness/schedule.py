"""Step-decay learning rate."""

from __future__ import annotations

from ..config import TrainConfig


def lr_at(config: TrainConfig, t: int) -> float:
    """``initial_lr · lr_decay ** (t // step_size)``, with ``t`` counted in ``step_unit``."""
    if t < 0:
        raise ValueError(f"schedule position must be non-negative, got {t}")
    return config.initial_lr * config.lr_decay ** (t // config.step_size)


def decay_points(config: TrainConfig) -> list[int]:
    """Positions inside ``[0, duration)`` where the rate drops."""
    return list(range(config.step_size, config.duration, config.step_size))
