"""Training loops for the document classifier and the page segmenter."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from loguru import logger

from ..config import TrainConfig
from ..corpus import Manifest, RecordStore
from ..errors import ConfigError, DivergenceError
from ..losses import combine, inverse_frequency_weights
from ..metrics import (
    BinaryConfusion,
    SegmentationScores,
    binary_confusion,
    classification_scores,
)
from ..models import ClassifierConfig, Module, UNetConfig, build_classifier, build_unet5
from ..monitoring import RunMetrics
from ..ndtensor import Tensor, no_grad, save_checkpoint, sigmoid
from ..sampling import make_stream
from .batches import (
    ClassificationBatches,
    SegmentationBatches,
    evaluation_arrays,
    segmentation_ids,
)
from .experiments import ExperimentSetting
from .optim import Adam
from .schedule import lr_at

CHECKPOINT_NAME = "model.nfck"
RUN_LOG_NAME = "run.json"
NAN_BATCH_NAME = "nan_batch.npz"
EVAL_CHUNK = 32
DECISION_THRESHOLD = 0.5


@dataclass
class TrainResult:
    """Outcome of one run: the metrics row and, when written, the checkpoint."""

    setting: ExperimentSetting
    seed: int
    row: dict[str, Any]
    checkpoint: Optional[Path] = None
    confusion: Optional[BinaryConfusion] = None
    steps: int = 0
    run_metrics: dict[str, Any] = field(default_factory=dict)


def _input_size(store: RecordStore) -> tuple[int, int]:
    manifest = store.manifest
    if manifest.spec is not None:
        return tuple(manifest.spec.image_size)
    if not manifest.records:
        raise ConfigError("manifest has no records")
    return store.get(manifest.records[0].id).mask.shape


def _check_task(setting: ExperimentSetting, task: str) -> None:
    if setting.task != task:
        raise ConfigError(f"setting {setting.label} is not a {task} setting")


def _step(optimizer: Adam, loss: Tensor, lr: float) -> None:
    optimizer.zero_grad()
    loss.backward()
    optimizer.step(lr)


def _guard(loss: Tensor, step: int, out_dir: Optional[Path], **batch) -> None:
    """Abort on a non-finite loss, keeping the offending batch for replay."""
    if np.isfinite(loss.item()):
        return
    path = None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / NAN_BATCH_NAME
        np.savez(path, **{k: np.asarray(v) for k, v in batch.items()})
    raise DivergenceError(
        f"loss became {loss.item()} at step {step}"
        + (f"; batch saved to {path}" if path else ""),
        step=step,
        batch_path=str(path) if path else None,
    )


def _finish(
    model: Module,
    setting: ExperimentSetting,
    cfg: TrainConfig,
    model_config: dict,
    out_dir: Optional[Path],
    metrics: RunMetrics,
) -> Optional[Path]:
    metrics.sample_memory()
    if out_dir is None:
        return None
    out_dir.mkdir(parents=True, exist_ok=True)
    path = save_checkpoint(
        out_dir / CHECKPOINT_NAME,
        model.state_dict(),
        {
            "setting": setting.model_dump(mode="json"),
            "train": cfg.to_dict(),
            "model": model_config,
        },
    )
    metrics.write(out_dir / RUN_LOG_NAME, {"setting": setting.label, "seed": cfg.seed})
    return path


def train_classifier(
    setting: ExperimentSetting,
    manifest: Manifest,
    train_cfg: TrainConfig,
    out_dir: Optional[Path] = None,
    model_config: Optional[ClassifierConfig] = None,
    store: Optional[RecordStore] = None,
    metrics: Optional[RunMetrics] = None,
) -> TrainResult:
    """Train one classifier run and score it on the test split.

    Focal objectives switch to the focal learning rate of ``train_cfg``.
    """
    _check_task(setting, "classification")
    cfg = train_cfg.for_loss(setting.loss.has_focal)
    store = store or RecordStore(manifest)
    metrics = metrics or RunMetrics()
    log = logger.bind(setting=setting.id, seed=cfg.seed, task="cls")

    test_ids = store.ids("test")
    if not test_ids:
        raise ConfigError("the test split is empty")
    model_config = model_config or ClassifierConfig.desk(
        setting.model, input_size=_input_size(store), seed=cfg.seed
    )
    if model_config.topology != setting.model:
        raise ConfigError(
            f"setting {setting.label} wants a {setting.model} model, got {model_config.topology}"
        )
    model = build_classifier(model_config)
    optimizer = Adam(model.parameters(), cfg.beta1, cfg.beta2, cfg.eps)
    stream = make_stream(manifest, setting.sampling, cfg.seed)
    batches = ClassificationBatches(setting, store, stream, model_config.input_size, cfg.seed)

    log.info("Training classifier: {} iterations, batch {}", cfg.duration, cfg.batch_size)
    for step in range(cfg.duration):
        started = time.perf_counter()
        lr = lr_at(cfg, step)
        x, y, ids = batches.batch(step, cfg.batch_size)
        model.train()
        probs = sigmoid(model(Tensor(x))).reshape(-1)
        loss = combine(setting.loss, probs, y)
        try:
            _guard(loss, step, out_dir, x=x, y=y, ids=ids)
        except DivergenceError:
            metrics.record_step((time.perf_counter() - started) * 1000, diverged=True)
            log.error("Loss diverged at iteration {}", step)
            raise
        _step(optimizer, loss, lr)
        metrics.record_step((time.perf_counter() - started) * 1000)
        if step % cfg.log_every == 0:
            log.debug("iteration {} loss {:.5f} lr {:.2e}", step, loss.item(), lr)

    confusion = evaluate_classifier(model, store, test_ids, model_config.input_size)
    row = {"setting": setting.id, "model": setting.model, "seed": cfg.seed}
    row.update(classification_scores(confusion))
    row.update(confusion.to_dict())
    log.info("Test scores {}", classification_scores(confusion))
    checkpoint = _finish(model, setting, cfg, model_config.to_dict(), out_dir, metrics)
    return TrainResult(
        setting=setting,
        seed=cfg.seed,
        row=row,
        checkpoint=checkpoint,
        confusion=confusion,
        steps=cfg.duration,
        run_metrics=metrics.get_metrics(),
    )


def evaluate_classifier(
    model: Module, store: RecordStore, ids: Sequence[str], input_size: tuple[int, int]
) -> BinaryConfusion:
    model.eval()
    confusion = BinaryConfusion()
    with no_grad():
        for start in range(0, len(ids), EVAL_CHUNK):
            x, _, labels = evaluation_arrays(store, ids[start : start + EVAL_CHUNK], input_size)
            probs = sigmoid(model(Tensor(x))).numpy().reshape(-1)
            preds = (probs >= DECISION_THRESHOLD).astype(np.int64)
            confusion = confusion + binary_confusion(preds, labels)
    return confusion


def train_segmenter(
    setting: ExperimentSetting,
    manifest: Manifest,
    train_cfg: TrainConfig,
    out_dir: Optional[Path] = None,
    model_config: Optional[UNetConfig] = None,
    store: Optional[RecordStore] = None,
    metrics: Optional[RunMetrics] = None,
    subset: Optional[str] = "notary",
) -> TrainResult:
    """Train one U-Net run and score per-class IoU on the test split.

    ``subset="notary"`` restricts training and evaluation to notary pages;
    ``None`` uses every record. Dice weights default to the inverse class
    frequencies of the training masks.
    """
    _check_task(setting, "segmentation")
    cfg = train_cfg.for_loss(setting.loss.has_focal)
    store = store or RecordStore(manifest)
    metrics = metrics or RunMetrics()
    log = logger.bind(setting=setting.id, seed=cfg.seed, task="seg")

    train_ids = segmentation_ids(store, "train", subset)
    test_ids = segmentation_ids(store, "test", subset)
    if not train_ids:
        raise ConfigError("no training records for the segmenter")
    if not test_ids:
        raise ConfigError("the test split has no records for the segmenter")

    loss_spec = setting.loss
    if "dice_weighted" in loss_spec.kinds and loss_spec.dice_weights is None:
        weights = inverse_frequency_weights(store.masks(train_ids))
        loss_spec = loss_spec.model_copy(update={"dice_weights": [float(w) for w in weights]})
        log.debug("Dice weights {}", loss_spec.dice_weights)

    model_config = model_config or UNetConfig(input_size=_input_size(store), seed=cfg.seed)
    model = build_unet5(model_config)
    optimizer = Adam(model.parameters(), cfg.beta1, cfg.beta2, cfg.eps)
    batches = SegmentationBatches(setting, store, train_ids, model_config.input_size, cfg.seed)

    log.info("Training segmenter: {} epochs over {} pages", cfg.duration, len(train_ids))
    steps = 0
    for epoch in range(cfg.duration):
        lr = lr_at(cfg, epoch)
        epoch_loss = 0.0
        n_batches = 0
        for x, masks, ids in batches.epoch(epoch, cfg.batch_size):
            started = time.perf_counter()
            model.train()
            probs = model(Tensor(x))
            loss = combine(loss_spec, probs, masks)
            try:
                _guard(loss, steps, out_dir, x=x, masks=masks, ids=ids)
            except DivergenceError:
                metrics.record_step((time.perf_counter() - started) * 1000, diverged=True)
                log.error("Loss diverged in epoch {}", epoch)
                raise
            _step(optimizer, loss, lr)
            metrics.record_step((time.perf_counter() - started) * 1000)
            epoch_loss += loss.item()
            n_batches += 1
            steps += 1
        if epoch % cfg.log_every == 0:
            log.debug("epoch {} loss {:.5f} lr {:.2e}", epoch, epoch_loss / max(n_batches, 1), lr)

    scores = evaluate_segmenter(model, store, test_ids, model_config.input_size)
    row = {"setting": setting.id, "seed": cfg.seed, **scores.as_row()}
    log.info("Test IoU {}", scores.as_row())
    checkpoint = _finish(model, setting, cfg, model_config.to_dict(), out_dir, metrics)
    return TrainResult(
        setting=setting,
        seed=cfg.seed,
        row=row,
        checkpoint=checkpoint,
        steps=steps,
        run_metrics=metrics.get_metrics(),
    )


def evaluate_segmenter(
    model: Module, store: RecordStore, ids: Sequence[str], input_size: tuple[int, int]
) -> SegmentationScores:
    model.eval()
    scores = SegmentationScores()
    with no_grad():
        for start in range(0, len(ids), EVAL_CHUNK):
            x, masks, _ = evaluation_arrays(store, ids[start : start + EVAL_CHUNK], input_size)
            probs = model(Tensor(x)).numpy()
            scores.update(probs.argmax(axis=1), masks)
    return scores
