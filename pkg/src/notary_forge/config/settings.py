from typing import Optional
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from .environments import Environments, ScalePreset

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")
RUN_METRICS_PROFILES = ("disabled", "minimal", "default", "full")


@dataclass
class AppSettings:
    """Application settings read from FORGE_* environment variables."""

    environment: str
    scale: ScalePreset
    log_level: str
    log_dir: Optional[Path]
    debug_mode: bool
    workers: int
    run_metrics: str = "default"

    @classmethod
    def load_from_env(cls) -> "AppSettings":
        """Load all application settings from the environment (and a ``.env`` file)."""
        load_dotenv(override=False)

        environment = os.getenv("FORGE_ENV", "desk").lower()
        if environment not in ("desk", "paper", "test"):
            raise ValueError(f"Invalid environment: {environment}")

        scale = Environments.get_config(environment)

        log_dir = os.getenv("FORGE_LOG_DIR")
        try:
            workers = int(os.getenv("FORGE_WORKERS", "1"))
        except ValueError as e:
            raise ValueError(f"FORGE_WORKERS must be an integer: {e}") from e

        return cls(
            environment=environment,
            scale=scale,
            log_level=os.getenv("FORGE_LOG_LEVEL", "INFO").upper(),
            log_dir=Path(log_dir) if log_dir else None,
            debug_mode=os.getenv("FORGE_DEBUG", "false").lower() == "true",
            workers=workers,
            run_metrics=os.getenv("FORGE_RUN_METRICS", "default").lower(),
        )

    def validate(self) -> None:
        """Validate the configuration settings."""
        if self.workers < 1:
            raise ValueError("Worker count must be at least 1")
        if self.log_level not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {self.log_level}")
        if self.run_metrics not in RUN_METRICS_PROFILES:
            raise ValueError(f"Unknown run metrics profile: {self.run_metrics}")


class Settings:
    """Singleton settings manager."""

    _instance: Optional[AppSettings] = None

    @classmethod
    def load(cls) -> AppSettings:
        """Load settings if not already loaded."""
        if cls._instance is None:
            cls._instance = AppSettings.load_from_env()
            cls._instance.validate()
        return cls._instance

    @classmethod
    def get(cls) -> AppSettings:
        """Get current settings or load if not initialized."""
        return cls.load()

    @classmethod
    def reload(cls) -> AppSettings:
        """Force reload settings from environment."""
        cls._instance = None
        return cls.load()
