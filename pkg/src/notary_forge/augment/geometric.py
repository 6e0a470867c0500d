"""Geometric effects, applied identically to images and masks.

Every warp is an inverse coordinate map sampled with
:func:`scipy.ndimage.map_coordinates`: bilinear for images, nearest for
masks, constant fill outside the source.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from scipy import ndimage
from skimage.transform import AffineTransform

from ..errors import ConfigError
from ..rng import make_rng
from .plan import AugmentationPlan, EffectStep

Coords = tuple[np.ndarray, np.ndarray]


def _grid(shape: tuple[int, int]) -> Coords:
    rows, cols = np.meshgrid(
        np.arange(shape[0], dtype=np.float64),
        np.arange(shape[1], dtype=np.float64),
        indexing="ij",
    )
    return rows, cols


def _center(shape: tuple[int, int]) -> tuple[float, float]:
    return (shape[0] - 1) / 2.0, (shape[1] - 1) / 2.0


def affine_coords(shape, scale: float, shift, rotation: float) -> Coords:
    """Zoom and rotate about the centre, then shift by a fraction of the side."""
    if scale <= 0:
        raise ConfigError(f"affine scale must be positive, got {scale}")
    cy, cx = _center(shape)
    dx, dy = shift[0] * shape[1], shift[1] * shape[0]
    matrix = (
        AffineTransform(translation=(cx + dx, cy + dy)).params
        @ AffineTransform(scale=(scale, scale), rotation=np.deg2rad(rotation)).params
        @ AffineTransform(translation=(-cx, -cy)).params
    )
    inverse = np.linalg.inv(matrix)
    rows, cols = _grid(shape)
    xs = inverse[0, 0] * cols + inverse[0, 1] * rows + inverse[0, 2]
    ys = inverse[1, 0] * cols + inverse[1, 1] * rows + inverse[1, 2]
    return ys, xs


def optical_coords(shape, k: float) -> Coords:
    """Radial barrel (k > 0) or pincushion (k < 0) distortion."""
    rows, cols = _grid(shape)
    cy, cx = _center(shape)
    ny, nx = (rows - cy) / max(cy, 1.0), (cols - cx) / max(cx, 1.0)
    factor = 1.0 + k * (nx**2 + ny**2)
    return cy + ny * factor * max(cy, 1.0), cx + nx * factor * max(cx, 1.0)


def _axis_map(extent: int, factors) -> np.ndarray:
    factors = np.asarray(factors, dtype=np.float64)
    if np.any(factors <= 0):
        raise ConfigError(f"grid factors must be positive, got {factors}")
    knots_out = np.linspace(0, extent - 1, len(factors) + 1)
    widths = factors / factors.sum() * (extent - 1)
    knots_src = np.concatenate([[0.0], np.cumsum(widths)])
    return np.interp(np.arange(extent, dtype=np.float64), knots_out, knots_src)


def grid_coords(shape, x_factors, y_factors) -> Coords:
    """Piecewise-linear stretching of grid cells along each axis."""
    row_map = _axis_map(shape[0], y_factors)
    col_map = _axis_map(shape[1], x_factors)
    rows, cols = np.meshgrid(row_map, col_map, indexing="ij")
    return rows, cols


def elastic_coords(shape, alpha: float, sigma: float, seed: int) -> Optional[Coords]:
    """Smoothed random displacement; ``alpha`` is the peak shift as a fraction of the side."""
    if alpha < 0 or sigma <= 0:
        raise ConfigError(f"elastic needs alpha >= 0 and sigma > 0, got {alpha}, {sigma}")
    if alpha == 0:
        return None
    rng = make_rng(seed, "elastic")
    rows, cols = _grid(shape)
    peak = alpha * max(shape)
    fields = []
    for _ in range(2):
        field = ndimage.gaussian_filter(rng.uniform(-1, 1, shape), sigma, mode="reflect")
        field /= max(np.abs(field).max(), 1e-12)
        fields.append(field * peak)
    return rows + fields[0], cols + fields[1]


def warp(array: np.ndarray, coords: Coords, order: int, fill: float) -> np.ndarray:
    """Sample ``array`` (H×W or H×W×C) at the source coordinates."""
    rows, cols = coords
    if array.ndim == 2:
        out = ndimage.map_coordinates(
            array.astype(np.float64), [rows, cols], order=order, mode="constant", cval=fill
        )
    else:
        out = np.stack(
            [
                ndimage.map_coordinates(
                    array[..., c].astype(np.float64),
                    [rows, cols],
                    order=order,
                    mode="constant",
                    cval=fill,
                )
                for c in range(array.shape[2])
            ],
            axis=-1,
        )
    return out.astype(array.dtype, copy=False)


def flip_rot90(array: np.ndarray, kind: str, k: int = 1) -> np.ndarray:
    """Exact flips and quarter turns; non-square arrays turn by 180° only."""
    if kind == "hflip":
        return np.ascontiguousarray(array[:, ::-1])
    if kind == "vflip":
        return np.ascontiguousarray(array[::-1])
    if kind == "rot90":
        if k not in (1, 2, 3):
            raise ConfigError(f"rot90 k must be 1, 2 or 3, got {k}")
        if array.shape[0] != array.shape[1]:
            k = 2
        return np.ascontiguousarray(np.rot90(array, k, axes=(0, 1)))
    raise ConfigError(f"unknown flip kind: {kind}")


_COORDS: dict[str, Callable[..., Optional[Coords]]] = {
    "affine": affine_coords,
    "optical": optical_coords,
    "grid": grid_coords,
    "elastic": elastic_coords,
}


def apply_geometric(step: EffectStep, array: np.ndarray, order: int, fill: float) -> np.ndarray:
    if step.group == "flip":
        return flip_rot90(array, step.effect, **step.params)
    coords = _COORDS[step.effect](array.shape[:2], **step.params)
    if coords is None:
        return array.copy()
    return warp(array, coords, order, fill)


def replay_geometry(
    plan: AugmentationPlan, array: np.ndarray, order: int = 0, fill: float = 0.0
) -> np.ndarray:
    """Run only the geometric steps of ``plan`` on any H×W(×C) array."""
    out = array
    for step in plan.geometric_steps:
        out = apply_geometric(step, out, order, fill)
    return out if out is not array else array.copy()
