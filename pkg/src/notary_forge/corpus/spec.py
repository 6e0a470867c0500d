"""Corpus parameters."""

from __future__ import annotations

import math

from pydantic import BaseModel, Field, model_validator

DEFAULT_AREA_TARGETS = (0.6395, 0.3428, 0.0007, 0.0170)
DEFAULT_SPLITS = (0.667, 0.083, 0.250)
SPLIT_NAMES = ("train", "val", "test")

# smallest glyph side in pixels and the lowest fill ratio over the glyph families
MIN_SIGN_SIDE = 3
MIN_GLYPH_FILL = 0.3


class CorpusSpec(BaseModel):
    """Counts, image geometry, class-area targets and splits of a synthetic corpus.

    ``sign_size_range`` is the sign bounding-box side as a fraction of the
    shorter image side. The default 32:1 ratio and splits reproduce the
    desk-scale corpus of 3300 documents.
    """

    n_non_notary: int = Field(default=3200, ge=0)
    n_notary: int = Field(default=100, ge=0)
    image_size: tuple[int, int] = (64, 64)
    area_targets: tuple[float, float, float, float] = DEFAULT_AREA_TARGETS
    sign_size_range: tuple[float, float] = (0.067, 0.233)
    style_seed: int = 0
    split_fractions: tuple[float, float, float] = DEFAULT_SPLITS
    ornament_rate: float = Field(default=0.05, ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check(self) -> "CorpusSpec":
        h, w = self.image_size
        if h < 16 or w < 16:
            raise ValueError(f"image_size must be at least 16x16, got {self.image_size}")
        if any(a < 0 for a in self.area_targets):
            raise ValueError(f"area_targets must be non-negative, got {self.area_targets}")
        if abs(sum(self.area_targets) - 1.0) > 0.01:
            raise ValueError(
                f"area_targets must sum to 1.0 +/- 0.01, got {sum(self.area_targets):.4f}"
            )
        if any(f < 0 for f in self.split_fractions) or abs(sum(self.split_fractions) - 1.0) > 1e-6:
            raise ValueError(f"split_fractions must be non-negative and sum to 1, got {self.split_fractions}")
        low, high = self.sign_size_range
        if not 0 < low <= high < 1:
            raise ValueError(f"sign_size_range must satisfy 0 < min <= max < 1, got {self.sign_size_range}")
        smin, smax = self.sign_side_bounds()
        if smin < MIN_SIGN_SIDE or smin > smax:
            raise ValueError(
                f"sign_size_range {self.sign_size_range} gives no sign side >= "
                f"{MIN_SIGN_SIDE} px at image size {self.image_size}"
            )
        return self

    @property
    def n_total(self) -> int:
        return self.n_non_notary + self.n_notary

    @property
    def imbalance_ratio(self) -> float:
        return self.n_non_notary / self.n_notary if self.n_notary else math.inf

    def sign_side_bounds(self) -> tuple[int, int]:
        side = min(self.image_size)
        low, high = self.sign_size_range
        return math.ceil(low * side - 1e-9), math.floor(high * side + 1e-9)

    def sign_area_bounds(self) -> tuple[float, float]:
        """Range of the class-3 area fraction of a single notary document."""
        smin, smax = self.sign_side_bounds()
        area = self.image_size[0] * self.image_size[1]
        return MIN_GLYPH_FILL * smin * smin / area, smax * smax / area
