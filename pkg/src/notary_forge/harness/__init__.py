"""Optimisation, training loops, experiment grids and reporting."""

from ..config import TrainConfig
from .experiments import (
    CLASSIFICATION_GRID,
    GRIDS,
    SEGMENTATION_GRID,
    ExperimentSetting,
    get_setting,
    resolve_task,
)
from .grid import GridResult, model_config_for, run_grid, run_setting, train_config_for
from .optim import Adam, AdamState, adam_step
from .report import aggregate_classification, aggregate_segmentation, write_report, write_results
from .schedule import decay_points, lr_at
from .trainer import TrainResult, evaluate_classifier, evaluate_segmenter, train_classifier, train_segmenter

__all__ = [
    "TrainConfig",
    "ExperimentSetting",
    "CLASSIFICATION_GRID",
    "SEGMENTATION_GRID",
    "GRIDS",
    "get_setting",
    "resolve_task",
    "Adam",
    "AdamState",
    "adam_step",
    "lr_at",
    "decay_points",
    "TrainResult",
    "train_classifier",
    "train_segmenter",
    "evaluate_classifier",
    "evaluate_segmenter",
    "GridResult",
    "run_grid",
    "run_setting",
    "model_config_for",
    "train_config_for",
    "write_results",
    "write_report",
    "aggregate_classification",
    "aggregate_segmentation",
]
