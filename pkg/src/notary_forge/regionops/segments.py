"""Meaningful-segment patches: a page filled with a single region type."""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np

from ..corpus import BACKGROUND, DocumentRecord
from .resample import bbox, resize

SegmentMode = Literal["repeat", "scale"]


def present_regions(mask: np.ndarray) -> list[int]:
    return [int(c) for c in np.unique(mask) if c != BACKGROUND]


def meaningful_segment(
    record: DocumentRecord,
    rng: np.random.Generator,
    mode: SegmentMode = "repeat",
    size: Optional[tuple[int, int]] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Crop the bounding box of one present region class and fill the patch with it.

    ``repeat`` tiles the crop, ``scale`` resizes it (nearest for the mask).
    The image and mask go through the same transform.
    """
    classes = present_regions(record.mask)
    if not classes:
        raise ValueError(f"{record.id} has only background, no region to sample")
    chosen = classes[int(rng.integers(len(classes)))]
    r0, r1, c0, c1 = bbox(record.mask == chosen)
    crop_image = record.image[r0:r1, c0:c1]
    crop_mask = record.mask[r0:r1, c0:c1]
    h, w = size or record.mask.shape
    if mode == "repeat":
        reps = (-(-h // crop_mask.shape[0]), -(-w // crop_mask.shape[1]))
        image = np.tile(crop_image, reps + (1,))[:h, :w]
        mask = np.tile(crop_mask, reps)[:h, :w]
        return np.ascontiguousarray(image), np.ascontiguousarray(mask)
    if mode == "scale":
        return resize(crop_image, (h, w), order=1), resize(crop_mask, (h, w), order=0)
    raise ValueError(f"unknown segment mode: {mode}")
