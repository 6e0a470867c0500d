"""Class weights for the Dice term."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

N_CLASSES = 4


def class_frequencies(masks: Iterable[np.ndarray], n_classes: int = N_CLASSES) -> np.ndarray:
    counts = np.zeros(n_classes, dtype=np.int64)
    for mask in masks:
        counts += np.bincount(np.asarray(mask).ravel(), minlength=n_classes)[:n_classes]
    total = counts.sum()
    if total == 0:
        raise ValueError("cannot compute class frequencies of an empty mask set")
    return counts / total


def weights_from_frequencies(frequencies: Sequence[float]) -> np.ndarray:
    """``w_c ∝ 1/freq_c`` normalised to mean 1.

    A class with zero frequency takes the largest weight of the present
    classes instead of an infinite one.
    """
    freq = np.asarray(frequencies, dtype=np.float64)
    present = freq > 0
    if not present.any():
        raise ValueError("at least one class must be present")
    weights = np.zeros_like(freq)
    weights[present] = 1.0 / freq[present]
    weights[~present] = weights[present].max()
    return weights / weights.mean()


def inverse_frequency_weights(masks: Iterable[np.ndarray], n_classes: int = N_CLASSES) -> np.ndarray:
    return weights_from_frequencies(class_frequencies(masks, n_classes))
