"""Region-level data interpolation: sign swap/add and meaningful segments."""

from .resample import bbox, resize
from .segments import meaningful_segment, present_regions
from .signs import (
    SignPatch,
    add_sign,
    apply_swap_mode,
    background_color,
    extract_sign,
    swap_sign,
)

__all__ = [
    "SignPatch",
    "extract_sign",
    "swap_sign",
    "add_sign",
    "apply_swap_mode",
    "background_color",
    "meaningful_segment",
    "present_regions",
    "bbox",
    "resize",
]
