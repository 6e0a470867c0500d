"""Resource and timing metrics of a training run."""

from typing import Optional, Dict, Any
from datetime import datetime
import json
from pathlib import Path
import threading

import psutil

from .metrics_config import RunMetricsConfig


class RunMetrics:
    """Thread-safe step counting, timing and memory sampling for one run."""

    def __init__(self, config: Optional[RunMetricsConfig] = None):
        self.config = config or RunMetricsConfig()
        self._lock = threading.Lock()
        self._step_count: int = 0
        self._divergence_count: int = 0
        self._slow_step_count: int = 0
        self._avg_step_time: float = 0.0
        self._last_step_time: Optional[datetime] = None
        self._peak_memory_mb: float = 0.0
        self._memory_samples: list[float] = []

    def record_step(self, duration_ms: float, diverged: bool = False) -> None:
        """Record one optimisation step."""
        if not self.config.enabled:
            return

        with self._lock:
            profile = self.config.profile

            if profile.enable_step_counting:
                self._step_count += 1

            if profile.enable_divergence_tracking and diverged:
                self._divergence_count += 1

            if profile.enable_timing_stats and self._step_count:
                self._last_step_time = datetime.now()
                if duration_ms > profile.slow_step_threshold.total_seconds() * 1000:
                    self._slow_step_count += 1
                self._avg_step_time = (
                    self._avg_step_time * (self._step_count - 1) + duration_ms
                ) / self._step_count

            if (
                profile.enable_memory_tracking
                and self._step_count % profile.memory_sample_rate == 0
            ):
                self._sample_memory_usage()

    def sample_memory(self) -> None:
        """Take one memory sample now, if the profile tracks memory."""
        if self.config.enabled and self.config.profile.enable_memory_tracking:
            with self._lock:
                self._sample_memory_usage()

    def _sample_memory_usage(self) -> None:
        """Sample resident memory of this process in MB."""
        usage = psutil.Process().memory_info().rss / (1024 * 1024)
        self._memory_samples.append(usage)
        self._peak_memory_mb = max(self._peak_memory_mb, usage)

    def get_metrics(self) -> Dict[str, Any]:
        """Snapshot of the collected metrics."""
        with self._lock:
            metrics: Dict[str, Any] = {}
            profile = self.config.profile

            if profile.enable_step_counting:
                metrics["step_count"] = self._step_count

            if profile.enable_divergence_tracking:
                metrics["divergence_count"] = self._divergence_count

            if profile.enable_timing_stats:
                metrics.update(
                    {
                        "avg_step_time_ms": self._avg_step_time,
                        "slow_step_count": self._slow_step_count,
                        "last_step_time": (
                            self._last_step_time.isoformat() if self._last_step_time else None
                        ),
                    }
                )

            if profile.enable_memory_tracking:
                metrics.update(
                    {
                        "current_memory_mb": self._memory_samples[-1] if self._memory_samples else 0.0,
                        "peak_memory_mb": self._peak_memory_mb,
                        "memory_samples": len(self._memory_samples),
                    }
                )

            return metrics

    def write(self, path: Path, extra: Optional[Dict[str, Any]] = None) -> Path:
        """Dump the snapshot (plus ``extra``) as JSON."""
        payload = {**(extra or {}), "metrics": self.get_metrics()}
        path = Path(path)
        path.write_text(json.dumps(payload, indent=2, default=str) + "\n", encoding="utf-8")
        return path

    def reset(self) -> None:
        """Reset all metrics."""
        with self._lock:
            self._step_count = 0
            self._divergence_count = 0
            self._slow_step_count = 0
            self._avg_step_time = 0.0
            self._last_step_time = None
            self._peak_memory_mb = 0.0
            self._memory_samples.clear()
