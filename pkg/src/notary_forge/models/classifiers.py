"""Skip-connection classifiers: residual-style and dense-style topologies."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Literal

import numpy as np

from ..errors import ConfigError
from ..ndtensor import Tensor, concat_channels, global_avg_pool, maxpool2
from ..rng import make_rng
from .layers import ConvBlock, Dropout, Linear, Module


@dataclass
class ClassifierConfig:
    """Binary document classifier configuration (single output logit)."""

    topology: Literal["residual", "dense"] = "dense"
    base_width: int = 24
    blocks_per_stage: tuple[int, ...] = (4, 4, 4)
    growth: int = 16
    dropout_p: float = 0.2
    input_size: tuple[int, int] = (64, 64)
    in_channels: int = 3
    seed: int = 0

    def __post_init__(self):
        self.blocks_per_stage = tuple(int(b) for b in self.blocks_per_stage)
        self.input_size = tuple(int(s) for s in self.input_size)
        if self.topology not in ("residual", "dense"):
            raise ConfigError(f"Unknown classifier topology: {self.topology}")
        if not 0.0 <= self.dropout_p < 1.0:
            raise ConfigError(f"dropout_p must lie in [0, 1), got {self.dropout_p}")
        if self.base_width < 1 or self.growth < 1:
            raise ConfigError("base_width and growth must be positive")
        if not self.blocks_per_stage or min(self.blocks_per_stage) < 1:
            raise ConfigError("every stage needs at least one block")
        # stem pool plus one pool per stage transition
        factor = 2 ** len(self.blocks_per_stage)
        if any(s % factor for s in self.input_size):
            raise ConfigError(
                f"input size {self.input_size} must be divisible by {factor} "
                f"for {len(self.blocks_per_stage)} stages"
            )

    @classmethod
    def desk(cls, topology: str, **overrides) -> "ClassifierConfig":
        """Desk-scale preset (~100k-300k parameters) for either topology."""
        if topology == "residual":
            defaults = {"base_width": 16, "blocks_per_stage": (2, 2, 2)}
        else:
            defaults = {"base_width": 24, "blocks_per_stage": (4, 4, 4), "growth": 16}
        return cls(topology=topology, **{**defaults, **overrides})

    def to_dict(self) -> dict:
        data = asdict(self)
        data["blocks_per_stage"] = list(self.blocks_per_stage)
        data["input_size"] = list(self.input_size)
        return data


class ResidualBlock(Module):
    """``x + F(x)`` with F = two conv blocks at constant width."""

    def __init__(self, channels: int, rng: np.random.Generator):
        super().__init__()
        self.first = ConvBlock(channels, channels, rng)
        self.second = ConvBlock(channels, channels, rng)

    def forward(self, x: Tensor) -> Tensor:
        return x + self.second(self.first(x))


class DenseStage(Module):
    """Each block sees the concatenation of the stage input and all prior outputs."""

    def __init__(
        self, in_channels: int, n_blocks: int, growth: int, rng: np.random.Generator
    ):
        super().__init__()
        self.blocks = [
            ConvBlock(in_channels + i * growth, growth, rng) for i in range(n_blocks)
        ]
        self.out_channels = in_channels + n_blocks * growth

    def forward(self, x: Tensor) -> Tensor:
        features = [x]
        for block in self.blocks:
            source = features[0] if len(features) == 1 else concat_channels(features)
            features.append(block(source))
        return concat_channels(features)


class Classifier(Module):
    def __init__(self, config: ClassifierConfig):
        super().__init__()
        self.config = config
        rng = make_rng(config.seed, "classifier", config.topology)
        width = config.base_width
        self.stem = ConvBlock(config.in_channels, width, rng)
        self.stages: list[Module] = []
        self.transitions: list[Module] = []
        n_stages = len(config.blocks_per_stage)
        for index, n_blocks in enumerate(config.blocks_per_stage):
            if config.topology == "residual":
                self.stages.append(
                    _Chain([ResidualBlock(width, rng) for _ in range(n_blocks)])
                )
                next_width = width * 2
            else:
                stage = DenseStage(width, n_blocks, config.growth, rng)
                self.stages.append(stage)
                width = stage.out_channels
                next_width = width // 2
            if index < n_stages - 1:
                self.transitions.append(ConvBlock(width, next_width, rng, kernel_size=1))
                width = next_width
        self.dropout = Dropout(config.dropout_p, make_rng(config.seed, "dropout"))
        self.head = Linear(width, 1, rng)
        self.feature_width = width

    def forward(self, x: Tensor) -> Tensor:
        expected = (self.config.in_channels, *self.config.input_size)
        if tuple(x.shape[1:]) != expected:
            raise ConfigError(f"classifier expects N×{expected}, got {x.shape}")
        x = maxpool2(self.stem(x))
        for index, stage in enumerate(self.stages):
            x = stage(x)
            if index < len(self.transitions):
                x = maxpool2(self.transitions[index](x))
        return self.head(self.dropout(global_avg_pool(x)))


class _Chain(Module):
    def __init__(self, layers: list[Module]):
        super().__init__()
        self.layers = layers

    def forward(self, x: Tensor) -> Tensor:
        for layer in self.layers:
            x = layer(x)
        return x


def build_classifier(config: ClassifierConfig) -> Classifier:
    """Residual or dense classifier ending in pool → dropout → linear → 1 logit."""
    return Classifier(config)


PAPER_PRESETS = {
    "residual": ClassifierConfig(
        topology="residual",
        base_width=64,
        blocks_per_stage=(3, 4, 6, 3),
        input_size=(224, 224),
    ),
    "dense": ClassifierConfig(
        topology="dense",
        base_width=64,
        blocks_per_stage=(6, 12, 24, 16),
        growth=32,
        input_size=(224, 224),
    ),
}
