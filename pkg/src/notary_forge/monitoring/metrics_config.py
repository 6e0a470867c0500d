"""Configuration for training-run metrics collection."""

from dataclasses import dataclass
from typing import Optional
from datetime import timedelta


@dataclass
class RunProfile:
    """Default metrics collection profile."""

    enable_step_counting: bool = True
    enable_divergence_tracking: bool = True
    enable_timing_stats: bool = True
    enable_memory_tracking: bool = False
    slow_step_threshold: timedelta = timedelta(seconds=2)
    memory_sample_rate: int = 100  # Sample every N steps


@dataclass
class RunMetricsConfig:
    """Configuration for training-run metrics collection."""

    enabled: bool = True
    profile: Optional[RunProfile] = None

    def __post_init__(self):
        if self.profile is None:
            self.profile = RunProfile()
        if self.profile.memory_sample_rate < 1:
            raise ValueError("memory_sample_rate must be at least 1")

    @classmethod
    def for_profile(cls, name: str) -> "RunMetricsConfig":
        """Configuration named by ``FORGE_RUN_METRICS``: disabled, minimal, default or full."""
        factories = {
            "disabled": cls.create_disabled,
            "minimal": cls.create_minimal,
            "default": cls,
            "full": cls.create_full,
        }
        try:
            return factories[name.lower()]()
        except KeyError:
            raise ValueError(f"Unknown run metrics profile: {name}") from None

    @classmethod
    def create_disabled(cls) -> "RunMetricsConfig":
        """Create a configuration with metrics disabled."""
        return cls(enabled=False)

    @classmethod
    def create_minimal(cls) -> "RunMetricsConfig":
        """Create a minimal metrics configuration."""
        return cls(
            enabled=True,
            profile=RunProfile(
                enable_step_counting=True,
                enable_divergence_tracking=True,
                enable_timing_stats=False,
                enable_memory_tracking=False,
            ),
        )

    @classmethod
    def create_full(cls) -> "RunMetricsConfig":
        """Create a full metrics configuration with all features enabled."""
        return cls(
            enabled=True,
            profile=RunProfile(
                enable_step_counting=True,
                enable_divergence_tracking=True,
                enable_timing_stats=True,
                enable_memory_tracking=True,
                slow_step_threshold=timedelta(milliseconds=500),
                memory_sample_rate=50,
            ),
        )
