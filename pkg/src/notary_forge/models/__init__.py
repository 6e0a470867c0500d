"""Desk-scale network builders."""

from .classifiers import (
    PAPER_PRESETS,
    Classifier,
    ClassifierConfig,
    DenseStage,
    ResidualBlock,
    build_classifier,
)
from .layers import BatchNorm2d, Conv2d, ConvBlock, Dropout, Linear, Module
from .unet import UNet, UNetConfig, build_unet5

__all__ = [
    "Module",
    "Conv2d",
    "BatchNorm2d",
    "Linear",
    "Dropout",
    "ConvBlock",
    "ClassifierConfig",
    "Classifier",
    "ResidualBlock",
    "DenseStage",
    "build_classifier",
    "PAPER_PRESETS",
    "UNetConfig",
    "UNet",
    "build_unet5",
]
