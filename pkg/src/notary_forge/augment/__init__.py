"""Group-based probabilistic augmentation with mask-consistent geometry."""

from .geometric import apply_geometric, flip_rot90, replay_geometry, warp
from .photometric import PHOTOMETRIC
from .pipeline import apply_plan
from .plan import AugmentationPlan, EffectStep, draw_params, sample_plan
from .presets import (
    GEOMETRIC_GROUPS,
    GROUP_EFFECTS,
    GROUPS,
    PRESETS,
    IntensityPreset,
    level_scales,
)

__all__ = [
    "GROUPS",
    "GROUP_EFFECTS",
    "GEOMETRIC_GROUPS",
    "PRESETS",
    "IntensityPreset",
    "level_scales",
    "AugmentationPlan",
    "EffectStep",
    "draw_params",
    "sample_plan",
    "apply_plan",
    "apply_geometric",
    "replay_geometry",
    "flip_rot90",
    "warp",
    "PHOTOMETRIC",
]
