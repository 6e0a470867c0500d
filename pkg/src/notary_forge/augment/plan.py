"""Sampling of replayable augmentation plans."""

from __future__ import annotations

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .presets import GEOMETRIC_GROUPS, GROUP_EFFECTS, GROUPS, IntensityPreset


class EffectStep(BaseModel):
    group: str
    effect: str
    params: dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _known_effect(self) -> "EffectStep":
        if self.group not in GROUP_EFFECTS:
            raise ValueError(f"unknown augmentation group: {self.group}")
        if self.effect not in GROUP_EFFECTS[self.group]:
            raise ValueError(f"effect {self.effect} does not belong to group {self.group}")
        return self

    @property
    def geometric(self) -> bool:
        return self.group in GEOMETRIC_GROUPS


class AugmentationPlan(BaseModel):
    """Ordered effects, at most one per group, in the fixed group order."""

    steps: list[EffectStep] = Field(default_factory=list)
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _group_order(self) -> "AugmentationPlan":
        positions = [GROUPS.index(step.group) for step in self.steps]
        if positions != sorted(set(positions)):
            raise ValueError(
                f"plan groups must be unique and ordered as {GROUPS}, "
                f"got {[s.group for s in self.steps]}"
            )
        return self

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def geometric_steps(self) -> list[EffectStep]:
        return [step for step in self.steps if step.geometric]

    @property
    def photometric_only(self) -> bool:
        return not self.geometric_steps

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AugmentationPlan":
        return cls.model_validate_json(text)


def _odd_size(rng: np.random.Generator, kernel_max: float) -> int:
    sizes = list(range(3, int(kernel_max) + 1, 2)) or [3]
    return int(sizes[rng.integers(len(sizes))])


def _symmetric(rng: np.random.Generator, limit: float) -> float:
    return float(rng.uniform(-limit, limit))


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(0, 2**63 - 1))


def draw_params(effect: str, scales: dict[str, float], rng: np.random.Generator) -> dict:
    """Concrete parameters of one effect within the preset magnitudes.

    Spatial quantities are fractions of the image side so a plan replays on
    any resolution.
    """
    s = scales
    if effect in ("hflip", "vflip", "grey"):
        return {}
    if effect == "rot90":
        return {"k": int(rng.integers(1, 4))}
    if effect == "affine":
        return {
            "scale": 1.0 + _symmetric(rng, s["scale_limit"]),
            "shift": [_symmetric(rng, s["shift_limit"]), _symmetric(rng, s["shift_limit"])],
            "rotation": _symmetric(rng, s["rotate_limit"]),
        }
    if effect == "gaussian_noise":
        return {"std": float(rng.uniform(0.0, s["noise_std"])), "seed": _seed(rng)}
    if effect == "uniform_noise":
        return {"limit": float(rng.uniform(0.0, s["noise_limit"])), "seed": _seed(rng)}
    if effect in ("box_blur", "median_filter"):
        return {"size": _odd_size(rng, s["kernel_max"])}
    if effect == "gaussian_blur":
        return {"sigma": float(rng.uniform(0.3, max(0.3, s["blur_sigma"])))}
    if effect == "motion_blur":
        return {"length": _odd_size(rng, s["kernel_max"]), "angle": float(rng.uniform(0, 180))}
    if effect == "optical":
        return {"k": _symmetric(rng, s["optical_k"])}
    if effect == "grid":
        steps = int(s["grid_steps"])
        d = s["grid_distort"]
        return {
            "x_factors": [float(v) for v in rng.uniform(1 - d, 1 + d, steps)],
            "y_factors": [float(v) for v in rng.uniform(1 - d, 1 + d, steps)],
        }
    if effect == "elastic":
        return {
            "alpha": float(rng.uniform(0.5, 1.0) * s["elastic_alpha"]),
            "sigma": s["elastic_sigma"],
            "seed": _seed(rng),
        }
    if effect == "brightness_contrast":
        return {
            "brightness": _symmetric(rng, s["brightness_limit"]),
            "contrast": _symmetric(rng, s["contrast_limit"]),
        }
    if effect == "clahe":
        return {"clip_limit": float(rng.uniform(0.5, 1.0) * s["clahe_clip"])}
    if effect == "hsv_shift":
        return {
            "hue": _symmetric(rng, s["hue_shift"]),
            "saturation": _symmetric(rng, s["saturation_shift"]),
            "value": _symmetric(rng, s["value_shift"]),
        }
    if effect == "rgb_shift":
        return {"shift": [_symmetric(rng, s["rgb_shift"]) for _ in range(3)]}
    if effect == "channel_shuffle":
        return {"permutation": [int(i) for i in rng.permutation(3)]}
    if effect == "shadow":
        n_vertices = int(rng.integers(3, 6))
        return {
            "vertices": [[float(x), float(y)] for x, y in rng.uniform(0, 1, (n_vertices, 2))],
            "darkness": float(rng.uniform(0.5, 1.0) * s["shadow_darkness"]),
        }
    if effect == "snow":
        return {
            "blobs": int(rng.integers(1, max(1, int(s["snow_blobs"])) + 1)),
            "radius": float(rng.uniform(0.03, 0.08)),
            "seed": _seed(rng),
        }
    if effect == "jpeg_compression":
        low = max(1, int(round(100 - 2 * s["jpeg_quality_drop"])))
        return {"quality": int(rng.integers(low, 96))}
    raise ValueError(f"unknown effect: {effect}")


def sample_plan(
    preset: IntensityPreset, rng: np.random.Generator, seed: Optional[int] = None
) -> AugmentationPlan:
    """Include each group with its probability and draw one of its effects."""
    steps = []
    for group in GROUPS:
        if rng.random() >= preset.group_probs[group]:
            continue
        effects = preset.effects[group]
        effect = effects[int(rng.integers(len(effects)))]
        steps.append(
            EffectStep(group=group, effect=effect, params=draw_params(effect, preset.param_scales, rng))
        )
    return AugmentationPlan(steps=steps, seed=seed)
