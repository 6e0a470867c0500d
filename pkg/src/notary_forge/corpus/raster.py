"""Polygon fill on the pixel grid."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import ConfigError, OutOfBoundsError


def rasterize_polygon(vertices: Sequence[Sequence[float]], shape: tuple[int, int]) -> np.ndarray:
    """Boolean mask of the pixels whose centres lie inside the polygon (even-odd rule).

    Vertices are ``(x, y)`` with pixel ``(r, c)`` spanning ``[c, c+1] × [r, r+1]``,
    so the square ``(0,0)-(10,10)`` covers exactly 100 pixels.
    """
    pts = np.asarray(vertices, dtype=np.float64)
    h, w = shape
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ConfigError(f"a polygon needs at least 3 (x, y) vertices, got {pts.shape}")
    if pts[:, 0].min() < 0 or pts[:, 0].max() > w or pts[:, 1].min() < 0 or pts[:, 1].max() > h:
        raise OutOfBoundsError(f"polygon vertex outside the {w}x{h} image: {pts.tolist()}")
    inside = np.zeros((h, w), dtype=bool)
    r0, r1 = int(np.floor(pts[:, 1].min())), int(np.ceil(pts[:, 1].max()))
    c0, c1 = int(np.floor(pts[:, 0].min())), int(np.ceil(pts[:, 0].max()))
    if r1 <= r0 or c1 <= c0:
        return inside
    ys = np.arange(r0, r1, dtype=np.float64)[:, None] + 0.5
    xs = np.arange(c0, c1, dtype=np.float64)[None, :] + 0.5
    window = np.zeros((r1 - r0, c1 - c0), dtype=bool)
    for (x0, y0), (x1, y1) in zip(pts, np.roll(pts, -1, axis=0)):
        if y0 == y1:
            continue
        crosses = (y0 > ys) != (y1 > ys)
        x_at = x0 + (ys - y0) * (x1 - x0) / (y1 - y0)
        window ^= crosses & (xs < x_at)
    inside[r0:r1, c0:c1] = window
    return inside


def translate_polygon(vertices, dx: int, dy: int) -> list[tuple[int, int]]:
    return [(int(x) + dx, int(y) + dy) for x, y in vertices]
