"""Augmentation groups, their effects and the weak/moderate/heavy presets."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, field_validator, model_validator

GROUPS: tuple[str, ...] = (
    "flip",
    "affine",
    "blur_noise",
    "distortion",
    "brightness_contrast",
    "color",
    "special",
)

GROUP_EFFECTS: dict[str, tuple[str, ...]] = {
    "flip": ("hflip", "vflip", "rot90"),
    "affine": ("affine",),
    "blur_noise": (
        "gaussian_noise",
        "uniform_noise",
        "box_blur",
        "gaussian_blur",
        "motion_blur",
        "median_filter",
    ),
    "distortion": ("optical", "grid", "elastic"),
    "brightness_contrast": ("brightness_contrast",),
    "color": ("clahe", "hsv_shift", "rgb_shift", "channel_shuffle", "grey"),
    "special": ("shadow", "snow", "jpeg_compression"),
}

GEOMETRIC_GROUPS = frozenset({"flip", "affine", "distortion"})

Level = Literal["weak", "moderate", "heavy", "custom"]

GROUP_PROBS: dict[str, tuple[float, ...]] = {
    "weak": (0.4, 0.4, 0.0, 0.2, 0.3, 0.3, 0.1),
    "moderate": (0.6, 0.7, 0.4, 0.4, 0.5, 0.5, 0.3),
    "heavy": (0.7, 0.7, 0.5, 0.5, 0.6, 0.6, 0.4),
}

# magnitude multiplier relative to weak
LEVEL_FACTOR = {"weak": 1.0, "moderate": 1.5, "heavy": 2.0}

BASE_SCALES: dict[str, float] = {
    "scale_limit": 0.1,
    "shift_limit": 0.05,
    "rotate_limit": 5.0,
    "noise_std": 0.02,
    "noise_limit": 0.03,
    "blur_sigma": 0.6,
    "optical_k": 0.05,
    "grid_distort": 0.1,
    "elastic_alpha": 0.02,
    "brightness_limit": 0.1,
    "contrast_limit": 0.1,
    "clahe_clip": 0.01,
    "hue_shift": 0.02,
    "saturation_shift": 0.05,
    "value_shift": 0.05,
    "rgb_shift": 0.04,
    "shadow_darkness": 0.2,
    "snow_blobs": 3.0,
    "jpeg_quality_drop": 20.0,
}

# not scaled with the level
FIXED_SCALES: dict[str, float] = {"elastic_sigma": 3.0, "grid_steps": 5.0}

KERNEL_MAX = {"weak": 3, "moderate": 5, "heavy": 7}


def level_scales(level: str) -> dict[str, float]:
    factor = LEVEL_FACTOR[level]
    scales = {name: value * factor for name, value in BASE_SCALES.items()}
    scales.update(FIXED_SCALES)
    scales["kernel_max"] = float(KERNEL_MAX[level])
    return scales


class IntensityPreset(BaseModel):
    """Occurrence probability per group plus the parameter magnitudes.

    ``effects`` restricts which effects a group may draw; at the weak level
    the snow and jpeg specials are removed.
    """

    level: Level
    group_probs: dict[str, float]
    effects: dict[str, list[str]]
    param_scales: dict[str, float]

    @field_validator("group_probs")
    @classmethod
    def _check_probs(cls, value: dict[str, float]) -> dict[str, float]:
        if set(value) != set(GROUPS):
            raise ValueError(f"group_probs must name exactly the groups {GROUPS}")
        for group, p in value.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability of group {group} must lie in [0, 1], got {p}")
        return value

    @model_validator(mode="after")
    def _check_effects(self) -> "IntensityPreset":
        for group, p in self.group_probs.items():
            allowed = self.effects.get(group, [])
            unknown = set(allowed) - set(GROUP_EFFECTS[group])
            if unknown:
                raise ValueError(f"unknown effects for group {group}: {sorted(unknown)}")
            if p > 0 and not allowed:
                raise ValueError(f"group {group} has probability {p} but no effects")
        missing = {"kernel_max"} | set(BASE_SCALES) | set(FIXED_SCALES)
        missing -= set(self.param_scales)
        if missing:
            raise ValueError(f"param_scales is missing {sorted(missing)}")
        return self

    @classmethod
    def for_level(cls, level: str) -> "IntensityPreset":
        key = level.lower()
        if key not in GROUP_PROBS:
            raise ValueError(f"Unknown augmentation level: {level}")
        effects = {group: list(names) for group, names in GROUP_EFFECTS.items()}
        if key == "weak":
            effects["special"] = ["shadow"]
        return cls(
            level=key,
            group_probs=dict(zip(GROUPS, GROUP_PROBS[key])),
            effects=effects,
            param_scales=level_scales(key),
        )

    def with_probs(self, p: float) -> "IntensityPreset":
        """Same magnitudes with every group at probability ``p``."""
        return self.model_copy(
            update={
                "level": "custom",
                "group_probs": {group: p for group in GROUPS},
                "effects": {g: list(GROUP_EFFECTS[g]) for g in GROUPS},
            }
        )

    @property
    def expected_effects(self) -> float:
        return float(sum(self.group_probs.values()))


PRESETS = {level: IntensityPreset.for_level(level) for level in GROUP_PROBS}
