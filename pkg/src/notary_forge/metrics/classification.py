"""Binary confusion counts and the notary-detection scores.

The notary class is the positive class. Reports follow the convention
where *sensitivity* is the recall of the non-notary (majority) class,
*specificity* the recall of the notary (minority) class and the *F-value*
the F1 score of the notary class.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from ..errors import ShapeError

REPORT_COLUMNS = {
    "majority_recall": "sensitivity",
    "minority_recall": "specificity",
    "minority_f1": "f_value",
}


@dataclass(frozen=True)
class BinaryConfusion:
    tp: int = 0
    fn: int = 0
    fp: int = 0
    tn: int = 0

    def __add__(self, other: "BinaryConfusion") -> "BinaryConfusion":
        return BinaryConfusion(
            self.tp + other.tp, self.fn + other.fn, self.fp + other.fp, self.tn + other.tn
        )

    def scaled(self, k: int) -> "BinaryConfusion":
        return BinaryConfusion(self.tp * k, self.fn * k, self.fp * k, self.tn * k)

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.fp + self.tn

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


def _ratio(num: int, den: int) -> float:
    return num / den if den else 0.0


def binary_confusion(preds: Sequence[int], labels: Sequence[int]) -> BinaryConfusion:
    """Counts of predicted vs true labels, 1 meaning notary."""
    preds = np.asarray(preds).astype(np.int64).ravel()
    labels = np.asarray(labels).astype(np.int64).ravel()
    if preds.shape != labels.shape:
        raise ShapeError(f"{preds.size} predictions for {labels.size} labels")
    for name, values in (("predictions", preds), ("labels", labels)):
        if not np.all((values == 0) | (values == 1)):
            raise ValueError(f"{name} must be binary")
    return BinaryConfusion(
        tp=int(np.sum((preds == 1) & (labels == 1))),
        fn=int(np.sum((preds == 0) & (labels == 1))),
        fp=int(np.sum((preds == 1) & (labels == 0))),
        tn=int(np.sum((preds == 0) & (labels == 0))),
    )


def majority_recall(c: BinaryConfusion) -> float:
    return _ratio(c.tn, c.tn + c.fp)


def minority_recall(c: BinaryConfusion) -> float:
    return _ratio(c.tp, c.tp + c.fn)


def minority_f1(c: BinaryConfusion) -> float:
    return _ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn)


def sensitivity(c: BinaryConfusion) -> float:
    return majority_recall(c)


def specificity(c: BinaryConfusion) -> float:
    return minority_recall(c)


def f_value(c: BinaryConfusion) -> float:
    return minority_f1(c)


def classification_scores(c: BinaryConfusion) -> dict[str, float]:
    """Scores under their report column names."""
    return {
        "sensitivity": sensitivity(c),
        "specificity": specificity(c),
        "f_value": f_value(c),
    }
