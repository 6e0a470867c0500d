"""Apply a sampled plan to an image and, optionally, its mask."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..errors import ShapeError
from .geometric import apply_geometric
from .photometric import PHOTOMETRIC
from .plan import AugmentationPlan

IMAGE_FILL = 0.0
MASK_FILL = 0


def apply_plan(
    plan: AugmentationPlan, image: np.ndarray, mask: Optional[np.ndarray] = None
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Run the plan's steps in group order.

    Geometric steps move image and mask with the same parameters (the mask
    with nearest-neighbour sampling and background fill); photometric steps
    change the image only. The result is clamped to [0, 1] in the input dtype.
    """
    if image.ndim != 3 or image.shape[2] != 3:
        raise ShapeError(f"expected an H×W×3 image, got shape {image.shape}")
    if mask is not None and mask.shape != image.shape[:2]:
        raise ShapeError(f"mask shape {mask.shape} does not match image {image.shape[:2]}")
    dtype = image.dtype
    out_image = image.astype(np.float64)
    out_mask = None if mask is None else mask.copy()
    for step in plan.steps:
        if step.geometric:
            out_image = apply_geometric(step, out_image, order=1, fill=IMAGE_FILL)
            if out_mask is not None:
                out_mask = apply_geometric(step, out_mask, order=0, fill=MASK_FILL)
        else:
            out_image = PHOTOMETRIC[step.effect](out_image, **step.params)
    return np.clip(out_image, 0.0, 1.0).astype(dtype), out_mask
