"""U-Net segmenter with nearest-neighbour upsampling in the decoder."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..errors import ConfigError, ShapeError
from ..ndtensor import Tensor, concat_channels, maxpool2, softmax_channel, upsample_nearest2
from ..rng import make_rng
from .layers import Conv2d, ConvBlock, Module


@dataclass
class UNetConfig:
    levels: int = 5
    base_channels: int = 16
    n_classes: int = 4
    input_size: tuple[int, int] = (64, 64)
    in_channels: int = 3
    seed: int = 0

    def __post_init__(self):
        self.input_size = tuple(int(s) for s in self.input_size)
        if self.levels < 2:
            raise ConfigError(f"a U-Net needs at least 2 levels, got {self.levels}")
        if self.base_channels < 1 or self.n_classes < 2:
            raise ConfigError("base_channels must be positive and n_classes >= 2")
        factor = self.divisor
        if any(s % factor for s in self.input_size):
            raise ConfigError(
                f"input size {self.input_size} must be divisible by {factor} "
                f"for a {self.levels}-level U-Net"
            )

    @property
    def divisor(self) -> int:
        return 2 ** (self.levels - 1)

    def channels(self, level: int) -> int:
        return self.base_channels * 2**level

    def to_dict(self) -> dict:
        data = asdict(self)
        data["input_size"] = list(self.input_size)
        return data


class DoubleConv(Module):
    def __init__(self, in_channels: int, out_channels: int, rng):
        super().__init__()
        self.first = ConvBlock(in_channels, out_channels, rng)
        self.second = ConvBlock(out_channels, out_channels, rng)

    def forward(self, x: Tensor) -> Tensor:
        return self.second(self.first(x))


class UNet(Module):
    """Encoder/decoder with skip concatenation at every level.

    Output is the per-pixel class distribution (softmax over channels).
    """

    def __init__(self, config: UNetConfig):
        super().__init__()
        self.config = config
        rng = make_rng(config.seed, "unet")
        self.encoders: list[Module] = []
        in_channels = config.in_channels
        for level in range(config.levels):
            self.encoders.append(DoubleConv(in_channels, config.channels(level), rng))
            in_channels = config.channels(level)
        self.up_convs: list[Module] = []
        self.decoders: list[Module] = []
        for level in reversed(range(config.levels - 1)):
            width = config.channels(level)
            self.up_convs.append(ConvBlock(config.channels(level + 1), width, rng))
            self.decoders.append(DoubleConv(2 * width, width, rng))
        self.classifier = Conv2d(config.channels(0), config.n_classes, 1, rng)

    def forward(self, x: Tensor) -> Tensor:
        h, w = x.shape[2:]
        if h % self.config.divisor or w % self.config.divisor:
            raise ShapeError(
                f"U-Net input {h}x{w} is not divisible by {self.config.divisor}"
            )
        skips = []
        for level, encoder in enumerate(self.encoders):
            if level:
                x = maxpool2(x)
            x = encoder(x)
            skips.append(x)
        skips.pop()
        for up_conv, decoder in zip(self.up_convs, self.decoders):
            x = up_conv(upsample_nearest2(x))
            x = decoder(concat_channels([skips.pop(), x]))
        return softmax_channel(self.classifier(x))


def build_unet5(config: UNetConfig) -> UNet:
    if config.levels != 5:
        raise ConfigError(f"build_unet5 expects levels=5, got {config.levels}")
    return UNet(config)
