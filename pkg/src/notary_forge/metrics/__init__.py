"""Classification and segmentation evaluation metrics."""

from .classification import (
    REPORT_COLUMNS,
    BinaryConfusion,
    binary_confusion,
    classification_scores,
    f_value,
    majority_recall,
    minority_f1,
    minority_recall,
    sensitivity,
    specificity,
)
from .segmentation import IOU_COLUMNS, SegmentationScores, iou, mean_iou

__all__ = [
    "REPORT_COLUMNS",
    "BinaryConfusion",
    "binary_confusion",
    "classification_scores",
    "sensitivity",
    "specificity",
    "f_value",
    "majority_recall",
    "minority_recall",
    "minority_f1",
    "IOU_COLUMNS",
    "SegmentationScores",
    "iou",
    "mean_iou",
]
