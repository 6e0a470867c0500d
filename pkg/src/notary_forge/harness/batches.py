"""Per-batch data path: sampling, region operations, augmentation, normalisation."""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..augment import PRESETS, apply_plan, sample_plan
from ..corpus import DocumentRecord, Label, RecordStore
from ..regionops import apply_swap_mode, meaningful_segment, resize
from ..rng import make_rng
from ..sampling import SampleStream
from .experiments import ExperimentSetting

PIXEL_MEAN = 0.5
PIXEL_STD = 0.25
SEGMENT_PROBABILITY = 0.5


def normalize(images: Sequence[np.ndarray]) -> np.ndarray:
    """Stack H×W×3 images in [0, 1] into a standardised N×3×H×W array."""
    batch = np.stack([np.asarray(im, dtype=np.float32) for im in images])
    return np.ascontiguousarray(((batch - PIXEL_MEAN) / PIXEL_STD).transpose(0, 3, 1, 2))


def fit_image(image: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    if image.shape[:2] == tuple(size):
        return image
    return resize(image, tuple(size), order=1)


def fit_mask(mask: np.ndarray, size: tuple[int, int]) -> np.ndarray:
    if mask.shape == tuple(size):
        return mask
    return resize(mask, tuple(size), order=0)


def _augment(setting: ExperimentSetting, rng: np.random.Generator, image, mask=None):
    if setting.augmentation == "none":
        return image, mask
    plan = sample_plan(PRESETS[setting.augmentation], rng)
    return apply_plan(plan, image, mask)


class ClassificationBatches:
    """Training batches for the classifier, drawn from a sample stream.

    Every sample gets its own random stream keyed by ``(seed, step, slot)``,
    so batch contents do not depend on how the work is scheduled.
    """

    def __init__(
        self,
        setting: ExperimentSetting,
        store: RecordStore,
        stream: SampleStream,
        input_size: tuple[int, int],
        seed: int = 0,
    ):
        self.setting = setting
        self.store = store
        self.stream = stream
        self.input_size = tuple(input_size)
        self.seed = seed
        self.donors: list[DocumentRecord] = []
        if setting.swap != "none":
            self.donors = [store.get(i) for i in store.ids("train", Label.NOTARY)]

    def sample(self, record_id: str, rng: np.random.Generator) -> tuple[np.ndarray, int]:
        record = self.store.get(record_id)
        donors = [d for d in self.donors if d.id != record_id] or self.donors
        record = apply_swap_mode(record, donors, self.setting.swap, rng)
        image, _ = _augment(self.setting, rng, record.image)
        return fit_image(image, self.input_size), record.label.target

    def batch(self, step: int, batch_size: int) -> tuple[np.ndarray, np.ndarray, list[str]]:
        ids = self.stream.take(batch_size)
        images, targets = [], []
        for slot, record_id in enumerate(ids):
            image, target = self.sample(record_id, make_rng(self.seed, "cls-batch", step, slot))
            images.append(image)
            targets.append(target)
        return normalize(images), np.asarray(targets, dtype=np.float32), ids


class SegmentationBatches:
    """Epochs of shuffled segmentation records, optionally mixed with meaningful segments."""

    def __init__(
        self,
        setting: ExperimentSetting,
        store: RecordStore,
        ids: Sequence[str],
        input_size: tuple[int, int],
        seed: int = 0,
    ):
        self.setting = setting
        self.store = store
        self.stream = SampleStream(list(ids), [], "natural", seed)
        self.input_size = tuple(input_size)
        self.seed = seed

    def sample(self, record_id: str, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        record = self.store.get(record_id)
        image, mask = record.image, record.mask
        if self.setting.meaningful_segments and rng.random() < SEGMENT_PROBABILITY:
            mode = "repeat" if rng.random() < 0.5 else "scale"
            image, mask = meaningful_segment(record, rng, mode)
        image, mask = _augment(self.setting, rng, image, mask)
        return fit_image(image, self.input_size), fit_mask(mask, self.input_size)

    def epoch(self, epoch: int, batch_size: int):
        """Yield ``(images, masks, ids)`` batches covering one epoch."""
        ids = self.stream.next_epoch()
        for start in range(0, len(ids), batch_size):
            chunk = ids[start : start + batch_size]
            images, masks = [], []
            for offset, record_id in enumerate(chunk):
                rng = make_rng(self.seed, "seg-batch", epoch, start + offset)
                image, mask = self.sample(record_id, rng)
                images.append(image)
                masks.append(mask)
            yield normalize(images), np.stack(masks).astype(np.int64), chunk


def evaluation_arrays(
    store: RecordStore, ids: Sequence[str], input_size: tuple[int, int]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Unaugmented normalised images, class masks and binary labels of ``ids``."""
    records = [store.get(i) for i in ids]
    images = normalize([fit_image(r.image, input_size) for r in records])
    masks = np.stack([fit_mask(r.mask, input_size) for r in records]).astype(np.int64)
    labels = np.asarray([r.label.target for r in records], dtype=np.int64)
    return images, masks, labels


def segmentation_ids(store: RecordStore, split: str, subset: Optional[str] = "notary") -> list[str]:
    """Records the segmenter trains or evaluates on; notary pages by default."""
    label = Label.NOTARY if subset == "notary" else None
    return store.ids(split, label)
