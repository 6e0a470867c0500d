"""Intersection over union for class masks."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..corpus import CLASS_NAMES, N_CLASSES
from ..errors import ShapeError

IOU_COLUMNS = tuple(f"iou_{name}" for name in CLASS_NAMES)


def _check_pair(pred: np.ndarray, gt: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pred, gt = np.asarray(pred), np.asarray(gt)
    if pred.shape != gt.shape:
        raise ShapeError(f"prediction {pred.shape} and ground truth {gt.shape} differ")
    return pred, gt


def iou(pred: np.ndarray, gt: np.ndarray, cls: int) -> float:
    """``|A ∩ B| / |A ∪ B|``; a class absent from both masks scores 1."""
    pred, gt = _check_pair(pred, gt)
    a, b = pred == cls, gt == cls
    union = np.count_nonzero(a | b)
    if union == 0:
        return 1.0
    return np.count_nonzero(a & b) / union


def mean_iou(pred: np.ndarray, gt: np.ndarray, n_classes: int = N_CLASSES) -> float:
    """Mean over the classes present in at least one of the two masks."""
    pred, gt = _check_pair(pred, gt)
    present = [c for c in range(n_classes) if np.any(pred == c) or np.any(gt == c)]
    if not present:
        return 1.0
    return float(np.mean([iou(pred, gt, c) for c in present]))


class SegmentationScores:
    """Dataset-level IoU from a confusion matrix summed over batches."""

    def __init__(self, n_classes: int = N_CLASSES):
        self.n_classes = n_classes
        self.reset()

    def reset(self) -> None:
        self.confusion = np.zeros((self.n_classes, self.n_classes), dtype=np.int64)

    def update(self, pred: np.ndarray, gt: np.ndarray) -> None:
        pred, gt = _check_pair(pred, gt)
        pred = pred.astype(np.int64).ravel()
        gt = gt.astype(np.int64).ravel()
        if pred.size and (min(pred.min(), gt.min()) < 0 or max(pred.max(), gt.max()) >= self.n_classes):
            raise ValueError(f"class index outside 0..{self.n_classes - 1}")
        self.confusion += np.bincount(
            gt * self.n_classes + pred, minlength=self.n_classes**2
        ).reshape(self.n_classes, self.n_classes)

    def per_class(self) -> np.ndarray:
        inter = np.diag(self.confusion).astype(np.float64)
        union = self.confusion.sum(axis=0) + self.confusion.sum(axis=1) - inter
        return np.where(union > 0, inter / np.maximum(union, 1), 1.0)

    def present(self) -> np.ndarray:
        return (self.confusion.sum(axis=0) + self.confusion.sum(axis=1)) > 0

    def mean(self) -> float:
        present = self.present()
        return float(self.per_class()[present].mean()) if present.any() else 1.0

    def as_row(self, names: Sequence[str] = IOU_COLUMNS) -> dict[str, float]:
        row = {name: float(v) for name, v in zip(names, self.per_class())}
        row["mean_iou"] = self.mean()
        return row
