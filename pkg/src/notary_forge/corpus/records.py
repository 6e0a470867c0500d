"""The document record shared by every pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np

from ..errors import ConfigError

BACKGROUND, TEXT, ORNAMENT, SIGN = 0, 1, 2, 3
CLASS_NAMES = ("background", "text", "ornament", "sign")
N_CLASSES = len(CLASS_NAMES)


class Label(str, Enum):
    NON_NOTARY = "non_notary"
    NOTARY = "notary"

    @property
    def target(self) -> int:
        return int(self is Label.NOTARY)


@dataclass
class DocumentRecord:
    """Image (H×W×3 in [0, 1]), class mask, label and the sign outline.

    ``sign_polygon`` vertices are ``(x, y)`` pixel-corner coordinates; its
    rasterization equals the class-3 pixels whenever it is present.
    """

    id: str
    image: np.ndarray
    mask: np.ndarray
    label: Label
    sign_polygon: Optional[list[tuple[int, int]]] = None
    seed: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def is_notary(self) -> bool:
        return self.label is Label.NOTARY

    @property
    def shape(self) -> tuple[int, int]:
        return self.mask.shape

    def sign_pixels(self) -> int:
        return int(np.count_nonzero(self.mask == SIGN))

    def with_arrays(self, image: np.ndarray, mask: np.ndarray, **changes) -> "DocumentRecord":
        return replace(self, image=image, mask=mask, **changes)

    def validate(self) -> None:
        """Raise ConfigError if the record breaks a label/mask/polygon invariant."""
        if self.image.ndim != 3 or self.image.shape[2] != 3:
            raise ConfigError(f"{self.id}: image must be H×W×3, got {self.image.shape}")
        if self.image.shape[:2] != self.mask.shape:
            raise ConfigError(
                f"{self.id}: image {self.image.shape[:2]} and mask {self.mask.shape} differ"
            )
        if self.mask.size and int(self.mask.max()) >= N_CLASSES:
            raise ConfigError(f"{self.id}: mask holds classes outside 0..{N_CLASSES - 1}")
        has_sign = self.sign_pixels() > 0
        if has_sign != self.is_notary:
            raise ConfigError(
                f"{self.id}: label {self.label.value} disagrees with sign pixels ({has_sign})"
            )
        if self.sign_polygon is not None:
            from .raster import rasterize_polygon

            filled = rasterize_polygon(self.sign_polygon, self.mask.shape)
            if not np.array_equal(filled, self.mask == SIGN):
                raise ConfigError(f"{self.id}: sign polygon does not match the class-3 mask")
