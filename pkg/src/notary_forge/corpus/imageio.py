"""PNG storage of document images and class masks."""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np
from PIL import Image

from ..errors import ConfigError
from .records import N_CLASSES


def to_uint8(image: np.ndarray) -> np.ndarray:
    return np.round(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)


def save_image(path: Path, image: np.ndarray) -> None:
    pixels = image if image.dtype == np.uint8 else to_uint8(image)
    Image.fromarray(np.ascontiguousarray(pixels)).save(path, format="PNG")


def load_image(path: Path) -> np.ndarray:
    """8-bit RGB pixels of any image file Pillow can read."""
    with Image.open(path) as img:
        return np.asarray(img.convert("RGB"), dtype=np.uint8)


def save_mask(path: Path, mask: np.ndarray) -> None:
    Image.fromarray(np.ascontiguousarray(mask, dtype=np.uint8)).save(path, format="PNG")


def load_mask(path: Path) -> np.ndarray:
    with Image.open(path) as img:
        mask = np.asarray(img, dtype=np.uint8)
    if mask.ndim != 2:
        raise ConfigError(f"{path}: mask must be single-channel, got shape {mask.shape}")
    if mask.size and int(mask.max()) >= N_CLASSES:
        raise ConfigError(f"{path}: mask holds class indices outside 0..{N_CLASSES - 1}")
    return mask


def file_checksum(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
