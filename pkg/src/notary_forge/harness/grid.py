"""Running a whole settings grid over several seeds."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence, Union

from loguru import logger

from ..config import Environments, ScalePreset, TrainConfig
from ..corpus import Manifest, RecordStore
from ..errors import ConfigError
from ..models import PAPER_PRESETS, ClassifierConfig, UNetConfig
from ..monitoring import RunMetrics, RunMetricsConfig
from .experiments import GRIDS, ExperimentSetting, resolve_task
from .report import RESULT_FILES, SUMMARY_NAME, write_report, write_results
from .trainer import TrainResult, train_classifier, train_segmenter

RUNS_DIR = "runs"


@dataclass
class GridResult:
    task: str
    results: Path
    summary: Path
    rows: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)


def model_config_for(
    setting: ExperimentSetting,
    preset: ScalePreset,
    seed: int,
    image_size: Sequence[int],
) -> Union[ClassifierConfig, UNetConfig]:
    """Network configuration of a setting at the preset's scale."""
    if setting.task == "segmentation":
        return UNetConfig(
            base_channels=preset.unet_base_channels, input_size=tuple(image_size), seed=seed
        )
    if preset.name == "paper":
        return replace(PAPER_PRESETS[setting.model], seed=seed)
    return ClassifierConfig.desk(setting.model, input_size=preset.classifier_input, seed=seed)


def train_config_for(
    setting: ExperimentSetting, preset: ScalePreset, seed: int, **overrides
) -> TrainConfig:
    base = preset.classification if setting.task == "classification" else preset.segmentation
    return base.with_overrides(seed=seed, **overrides)


def run_setting(
    setting: ExperimentSetting,
    manifest: Manifest,
    preset: ScalePreset,
    seed: int,
    out_dir: Optional[Path] = None,
    store: Optional[RecordStore] = None,
    metrics_config: Optional[RunMetricsConfig] = None,
    **overrides,
) -> TrainResult:
    """Train and score one (setting, seed) cell at the given scale."""
    store = store or RecordStore(manifest)
    image_size = (
        manifest.spec.image_size if manifest.spec is not None else preset.corpus.image_size
    )
    model_config = model_config_for(setting, preset, seed, image_size)
    cfg = train_config_for(setting, preset, seed, **overrides)
    trainer = train_classifier if setting.task == "classification" else train_segmenter
    return trainer(
        setting,
        manifest,
        cfg,
        out_dir=out_dir,
        model_config=model_config,
        store=store,
        metrics=RunMetrics(metrics_config),
    )


def _cell_name(setting: ExperimentSetting) -> str:
    return setting.label if setting.task == "segmentation" else f"{setting.label}-{setting.model}"


def _run_cell(job: tuple) -> dict:
    setting, seed, corpus_dir, out_dir, preset, metrics_config, overrides = job
    log = logger.bind(setting=setting.id, seed=seed, task=setting.task)
    log.info("Starting {} seed {}", setting.label, seed)
    try:
        manifest = Manifest.load(corpus_dir)
        run_dir = Path(out_dir) / RUNS_DIR / f"{_cell_name(setting)}-seed{seed}"
        result = run_setting(
            setting, manifest, preset, seed, run_dir, metrics_config=metrics_config, **overrides
        )
    except Exception as e:
        log.error("Cell {} seed {} failed: {}", setting.label, seed, e)
        return {
            "setting": setting.id,
            "model": setting.model,
            "seed": seed,
            "status": "failed",
            "error": f"{type(e).__name__}: {e}",
        }
    log.info("Finished {} seed {}", setting.label, seed)
    return {**result.row, "status": "ok"}


def run_grid(
    task: str,
    seeds: Sequence[int],
    corpus_dir: Path,
    out_dir: Path,
    preset: Optional[ScalePreset] = None,
    workers: int = 1,
    settings: Optional[Sequence[int]] = None,
    models: Optional[Sequence[str]] = None,
    metrics_config: Optional[RunMetricsConfig] = None,
    **overrides,
) -> GridResult:
    """Run every setting of the task's grid for every seed.

    ``models`` runs each classification setting once per listed topology
    instead of the setting's own; it does not apply to segmentation.
    A failing cell is marked ``failed`` in the CSV and does not stop the
    grid. The CSV carries no timings, so reruns produce identical bytes.
    """
    task = resolve_task(task)
    preset = preset or Environments.get_desk_config()
    grid = GRIDS[task]
    chosen = sorted(grid) if settings is None else sorted(settings)
    unknown = [s for s in chosen if s not in grid]
    if unknown:
        raise ValueError(f"{task} grid has no settings {unknown}")
    if not seeds:
        raise ValueError("at least one seed is required")
    cells = [grid[s] for s in chosen]
    if models:
        if task != "classification":
            raise ConfigError("a model choice only applies to classification grids")
        cells = [setting.with_model(model) for setting in cells for model in models]
    Manifest.load(corpus_dir)

    out_dir = Path(out_dir)
    jobs = [
        (setting, int(seed), str(corpus_dir), str(out_dir), preset, metrics_config, overrides)
        for setting in cells
        for seed in seeds
    ]
    logger.info("Running {} grid: {} cells with {} workers", task, len(jobs), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_cell, jobs))
    else:
        rows = [_run_cell(job) for job in jobs]

    results = write_results(task, rows, out_dir / RESULT_FILES[task])
    summary = write_report(out_dir, out_dir / SUMMARY_NAME)
    failures = [row for row in rows if row["status"] == "failed"]
    if failures:
        logger.warning("{} of {} cells failed", len(failures), len(rows))
    return GridResult(task=task, results=results, summary=summary, rows=rows, failures=failures)
