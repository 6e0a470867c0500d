from .environments import Environments, ScalePreset
from .settings import LOG_LEVELS, RUN_METRICS_PROFILES, AppSettings, Settings
from .training import TrainConfig

__all__ = [
    "AppSettings",
    "Settings",
    "LOG_LEVELS",
    "RUN_METRICS_PROFILES",
    "Environments",
    "ScalePreset",
    "TrainConfig",
]
