"""Pixel-value effects. None of these touch the mask.

All functions take an H×W×3 float image in [0, 1] and return a float64
array; clamping happens once at the end of :func:`apply_plan`.
"""

from __future__ import annotations

import io
from typing import Callable, Sequence

import numpy as np
from PIL import Image
from scipy import ndimage
from skimage import draw, exposure
from skimage.color import hsv2rgb, rgb2hsv

from ..errors import ConfigError
from ..rng import make_rng

GREY_WEIGHTS = np.array([0.299, 0.587, 0.114])


def _odd_kernel(size: int, name: str) -> int:
    if size < 1 or size % 2 == 0:
        raise ConfigError(f"{name} kernel size must be a positive odd integer, got {size}")
    return size


def _per_channel(image: np.ndarray, fn) -> np.ndarray:
    return np.stack([fn(image[..., c]) for c in range(image.shape[2])], axis=-1)


# blur & noise ---------------------------------------------------------------


def gaussian_noise(image, std: float, seed: int) -> np.ndarray:
    if std < 0:
        raise ConfigError(f"noise std must be non-negative, got {std}")
    return image + make_rng(seed, "gaussian_noise").normal(0.0, std, image.shape)


def uniform_noise(image, limit: float, seed: int) -> np.ndarray:
    if limit < 0:
        raise ConfigError(f"noise limit must be non-negative, got {limit}")
    return image + make_rng(seed, "uniform_noise").uniform(-limit, limit, image.shape)


def box_blur(image, size: int) -> np.ndarray:
    size = _odd_kernel(size, "box blur")
    return ndimage.uniform_filter(image.astype(np.float64), size=(size, size, 1), mode="reflect")


def gaussian_blur(image, sigma: float) -> np.ndarray:
    if sigma <= 0:
        raise ConfigError(f"blur sigma must be positive, got {sigma}")
    return ndimage.gaussian_filter(image.astype(np.float64), sigma=(sigma, sigma, 0), mode="reflect")


def motion_kernel(length: int, angle: float) -> np.ndarray:
    """Normalised line kernel of odd ``length`` through the centre at ``angle`` degrees."""
    length = _odd_kernel(length, "motion blur")
    kernel = np.zeros((length, length))
    half = length // 2
    dy = int(round(half * np.sin(np.deg2rad(angle))))
    dx = int(round(half * np.cos(np.deg2rad(angle))))
    rr, cc = draw.line(half - dy, half - dx, half + dy, half + dx)
    kernel[rr, cc] = 1.0
    return kernel / kernel.sum()


def motion_blur(image, length: int, angle: float) -> np.ndarray:
    kernel = motion_kernel(length, angle)
    return _per_channel(
        image.astype(np.float64), lambda ch: ndimage.convolve(ch, kernel, mode="reflect")
    )


def median_filter(image, size: int) -> np.ndarray:
    size = _odd_kernel(size, "median")
    return ndimage.median_filter(image.astype(np.float64), size=(size, size, 1), mode="reflect")


# brightness & contrast ------------------------------------------------------


def brightness_contrast(image, brightness: float, contrast: float) -> np.ndarray:
    """``(x - mean)(1 + contrast) + mean + brightness``."""
    if contrast <= -1.0:
        raise ConfigError(f"contrast change must be greater than -1, got {contrast}")
    image = image.astype(np.float64)
    if brightness == 0 and contrast == 0:
        return image
    mean = image.mean()
    return (image - mean) * (1.0 + contrast) + mean + brightness


# color ----------------------------------------------------------------------


def clahe(image, clip_limit: float) -> np.ndarray:
    """Contrast-limited adaptive histogram equalisation on an 8×8 tile grid."""
    if not 0 < clip_limit <= 1:
        raise ConfigError(f"CLAHE clip limit must lie in (0, 1], got {clip_limit}")
    h, w = image.shape[:2]
    return exposure.equalize_adapthist(
        np.clip(image, 0.0, 1.0),
        kernel_size=(max(h // 8, 2), max(w // 8, 2)),
        clip_limit=clip_limit,
    )


def hsv_shift(image, hue: float, saturation: float, value: float) -> np.ndarray:
    hsv = rgb2hsv(np.clip(image, 0.0, 1.0))
    hsv[..., 0] = (hsv[..., 0] + hue) % 1.0
    hsv[..., 1] = np.clip(hsv[..., 1] + saturation, 0.0, 1.0)
    hsv[..., 2] = np.clip(hsv[..., 2] + value, 0.0, 1.0)
    return hsv2rgb(hsv)


def rgb_shift(image, shift: Sequence[float]) -> np.ndarray:
    if len(shift) != 3:
        raise ConfigError(f"rgb shift needs three values, got {shift}")
    return image + np.asarray(shift, dtype=np.float64)


def channel_shuffle(image, permutation: Sequence[int]) -> np.ndarray:
    if sorted(permutation) != [0, 1, 2]:
        raise ConfigError(f"not a channel permutation: {permutation}")
    return image[..., list(permutation)].astype(np.float64)


def grey(image) -> np.ndarray:
    luma = image.astype(np.float64) @ GREY_WEIGHTS
    return np.repeat(luma[..., None], 3, axis=2)


# special --------------------------------------------------------------------


def shadow(image, vertices: Sequence[Sequence[float]], darkness: float) -> np.ndarray:
    """Multiply a polygon (vertices as fractions of the side) by ``1 - darkness``."""
    if not 0.0 <= darkness <= 1.0:
        raise ConfigError(f"shadow darkness must lie in [0, 1], got {darkness}")
    h, w = image.shape[:2]
    pts = np.asarray(vertices, dtype=np.float64)
    rr, cc = draw.polygon(pts[:, 1] * (h - 1), pts[:, 0] * (w - 1), shape=(h, w))
    out = image.astype(np.float64)
    out[rr, cc] *= 1.0 - darkness
    return out


def snow(image, blobs: int, radius: float, seed: int) -> np.ndarray:
    """Bright discs that wash out whatever lies below them."""
    if blobs < 0 or radius <= 0:
        raise ConfigError(f"snow needs blobs >= 0 and radius > 0, got {blobs}, {radius}")
    rng = make_rng(seed, "snow")
    h, w = image.shape[:2]
    out = image.astype(np.float64)
    for _ in range(blobs):
        center = (rng.uniform(0, h), rng.uniform(0, w))
        rr, cc = draw.disk(center, max(radius * max(h, w), 1.0), shape=(h, w))
        out[rr, cc] = 0.1 * out[rr, cc] + 0.9
    return out


def jpeg_compression(image, quality: int) -> np.ndarray:
    """Encode to an in-memory JPEG at ``quality`` and decode it again."""
    if not 1 <= quality <= 100:
        raise ConfigError(f"jpeg quality must lie in [1, 100], got {quality}")
    buffer = io.BytesIO()
    pixels = np.clip(np.round(image * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(np.ascontiguousarray(pixels)).save(buffer, format="JPEG", quality=int(quality))
    buffer.seek(0)
    with Image.open(buffer) as decoded:
        return np.asarray(decoded.convert("RGB"), dtype=np.float64) / 255.0


PHOTOMETRIC: dict[str, Callable[..., np.ndarray]] = {
    "gaussian_noise": gaussian_noise,
    "uniform_noise": uniform_noise,
    "box_blur": box_blur,
    "gaussian_blur": gaussian_blur,
    "motion_blur": motion_blur,
    "median_filter": median_filter,
    "brightness_contrast": brightness_contrast,
    "clahe": clahe,
    "hsv_shift": hsv_shift,
    "rgb_shift": rgb_shift,
    "channel_shuffle": channel_shuffle,
    "grey": grey,
    "shadow": shadow,
    "snow": snow,
    "jpeg_compression": jpeg_compression,
}
