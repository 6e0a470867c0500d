"""Resizing of patches: bilinear for pixels, nearest for class masks."""

from __future__ import annotations

import numpy as np
from scipy import ndimage


def bbox(region: np.ndarray) -> tuple[int, int, int, int]:
    """``(r0, r1, c0, c1)`` half-open bounds of the True pixels."""
    rows = np.flatnonzero(region.any(axis=1))
    cols = np.flatnonzero(region.any(axis=0))
    if rows.size == 0:
        raise ValueError("empty region has no bounding box")
    return int(rows[0]), int(rows[-1]) + 1, int(cols[0]), int(cols[-1]) + 1


def resize(array: np.ndarray, shape: tuple[int, int], order: int) -> np.ndarray:
    """Resample H×W(×C) ``array`` to ``shape`` on pixel centres."""
    src_h, src_w = array.shape[:2]
    if (src_h, src_w) == tuple(shape):
        return array.copy()
    rows = (np.arange(shape[0]) + 0.5) * src_h / shape[0] - 0.5
    cols = (np.arange(shape[1]) + 0.5) * src_w / shape[1] - 0.5
    grid = np.meshgrid(rows, cols, indexing="ij")
    channels = [array] if array.ndim == 2 else [array[..., c] for c in range(array.shape[2])]
    out = [
        ndimage.map_coordinates(ch.astype(np.float64), grid, order=order, mode="nearest")
        for ch in channels
    ]
    result = out[0] if array.ndim == 2 else np.stack(out, axis=-1)
    return result.astype(array.dtype, copy=False)
