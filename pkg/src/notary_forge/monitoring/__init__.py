"""Logging setup and training-run metrics."""

from .log_setup import LOG_FILE, configure_logging
from .metrics_config import RunMetricsConfig, RunProfile
from .run_metrics import RunMetrics

__all__ = [
    "configure_logging",
    "LOG_FILE",
    "RunMetrics",
    "RunMetricsConfig",
    "RunProfile",
]
