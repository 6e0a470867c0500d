import json

import numpy as np
import pytest

from notary_forge.corpus import Label
from notary_forge.errors import ConfigError, DivergenceError
from notary_forge.harness import (
    CLASSIFICATION_GRID,
    SEGMENTATION_GRID,
    train_classifier,
    train_segmenter,
)
from notary_forge.harness.batches import ClassificationBatches, SegmentationBatches, normalize
from notary_forge.harness.trainer import CHECKPOINT_NAME, NAN_BATCH_NAME, RUN_LOG_NAME
from notary_forge.models import ClassifierConfig, UNetConfig
from notary_forge.ndtensor import Tensor, load_checkpoint
from notary_forge.sampling import make_stream

RESIDUAL = ClassifierConfig.desk("residual", input_size=(32, 32))


def _residual(setting_id):
    return CLASSIFICATION_GRID[setting_id].with_model("residual")


def test_normalize_layout():
    batch = normalize([np.full((4, 5, 3), 0.75)])
    assert batch.shape == (1, 3, 4, 5)
    assert batch.dtype == np.float32
    np.testing.assert_allclose(batch, 1.0)


def test_classification_batches_are_reproducible(forge_manifest, forge_store):
    """Test equal seeds give identical augmented, swapped batches."""
    setting = CLASSIFICATION_GRID[8]

    def first_batch():
        stream = make_stream(forge_manifest, setting.sampling, 3)
        return ClassificationBatches(setting, forge_store, stream, (32, 32), seed=3).batch(0, 6)

    (x1, y1, ids1), (x2, y2, ids2) = first_batch(), first_batch()
    assert ids1 == ids2
    np.testing.assert_array_equal(x1, x2)
    np.testing.assert_array_equal(y1, y2)
    assert x1.shape == (6, 3, 32, 32)
    expected = [float(forge_store.label(i) is Label.NOTARY) for i in ids1]
    np.testing.assert_array_equal(y1, expected)


def test_swap_settings_collect_train_donors(forge_manifest, forge_store):
    stream = make_stream(forge_manifest, "oversample", 0)
    batches = ClassificationBatches(CLASSIFICATION_GRID[9], forge_store, stream, (32, 32))
    assert {d.id for d in batches.donors} == set(forge_store.ids("train", Label.NOTARY))
    plain = ClassificationBatches(CLASSIFICATION_GRID[1], forge_store, stream, (32, 32))
    assert plain.donors == []


def test_segmentation_epoch_covers_ids(forge_store):
    ids = forge_store.ids("train", Label.NOTARY)
    batches = SegmentationBatches(SEGMENTATION_GRID[12], forge_store, ids, (32, 32), seed=1)
    seen = []
    for x, masks, chunk in batches.epoch(0, 3):
        assert x.shape[0] == masks.shape[0] == len(chunk)
        assert masks.dtype == np.int64
        assert masks.max() <= 3
        seen.extend(chunk)
    assert sorted(seen) == sorted(ids)


def test_train_classifier_writes_artifacts(forge_manifest, forge_store, forge_preset, tmp_path):
    """Test a short classifier run scores the test split and saves its checkpoint."""
    cfg = forge_preset.classification.with_overrides(duration=2, seed=1)
    result = train_classifier(
        _residual(4), forge_manifest, cfg, out_dir=tmp_path, model_config=RESIDUAL, store=forge_store
    )
    assert result.steps == 2
    assert result.confusion.total == len(forge_store.ids("test"))
    assert set(result.row) == {"setting", "seed", "sensitivity", "specificity", "f_value", "tp", "fn", "fp", "tn"}
    assert result.row["setting"] == 4 and result.row["seed"] == 1
    assert result.checkpoint == tmp_path / CHECKPOINT_NAME
    state, config = load_checkpoint(result.checkpoint)
    assert config["setting"]["id"] == 4
    assert config["model"]["topology"] == "residual"
    run_log = json.loads((tmp_path / RUN_LOG_NAME).read_text(encoding="utf-8"))
    assert run_log["metrics"]["step_count"] == 2
    assert result.run_metrics["step_count"] == 2


def test_classifier_runs_are_deterministic(forge_manifest, forge_store, forge_preset, tmp_path):
    cfg = forge_preset.classification.with_overrides(duration=1, seed=5)
    runs = [
        train_classifier(
            _residual(11), forge_manifest, cfg, out_dir=tmp_path / name, model_config=RESIDUAL, store=forge_store
        )
        for name in ("a", "b")
    ]
    assert runs[0].row == runs[1].row
    state_a, _ = load_checkpoint(runs[0].checkpoint)
    state_b, _ = load_checkpoint(runs[1].checkpoint)
    for key in state_a:
        np.testing.assert_array_equal(state_a[key], state_b[key])


def test_focal_settings_use_focal_rate(forge_manifest, forge_store, forge_preset, tmp_path):
    cfg = forge_preset.classification.with_overrides(duration=0)
    result = train_classifier(
        _residual(10), forge_manifest, cfg, out_dir=tmp_path, model_config=RESIDUAL, store=forge_store
    )
    _, config = load_checkpoint(result.checkpoint)
    assert config["train"]["initial_lr"] == pytest.approx(5e-4)


def test_model_must_match_setting(forge_manifest, forge_store, forge_preset):
    with pytest.raises(ConfigError) as exc_info:
        train_classifier(
            CLASSIFICATION_GRID[1], forge_manifest, forge_preset.classification, model_config=RESIDUAL, store=forge_store
        )
    assert "wants a dense model" in str(exc_info.value)


def test_wrong_task(forge_manifest, forge_preset):
    with pytest.raises(ConfigError) as exc_info:
        train_segmenter(CLASSIFICATION_GRID[1], forge_manifest, forge_preset.segmentation)
    assert "is not a segmentation setting" in str(exc_info.value)


def test_divergence_keeps_the_batch(forge_manifest, forge_store, forge_preset, tmp_path, monkeypatch):
    """Test a NaN loss aborts the run and saves the batch for replay."""
    monkeypatch.setattr(
        "notary_forge.harness.trainer.combine",
        lambda spec, predictions, targets: Tensor(np.array(np.nan)),
    )
    with pytest.raises(DivergenceError) as exc_info:
        train_classifier(
            _residual(1), forge_manifest, forge_preset.classification, out_dir=tmp_path,
            model_config=RESIDUAL, store=forge_store,
        )
    assert exc_info.value.step == 0
    assert exc_info.value.batch_path == str(tmp_path / NAN_BATCH_NAME)
    saved = np.load(tmp_path / NAN_BATCH_NAME)
    assert saved["x"].shape[0] == forge_preset.classification.batch_size


def test_train_segmenter_scores_iou(forge_manifest, forge_store, forge_preset, tmp_path):
    """Test a one-epoch U-Net run reports per-class IoU."""
    model_config = UNetConfig(base_channels=forge_preset.unet_base_channels, input_size=(32, 32))
    result = train_segmenter(
        SEGMENTATION_GRID[7], forge_manifest, forge_preset.segmentation, out_dir=tmp_path,
        model_config=model_config, store=forge_store,
    )
    n_train = len(forge_store.ids("train", Label.NOTARY))
    batch = forge_preset.segmentation.batch_size
    assert result.steps == -(-n_train // batch)
    for column in ("iou_background", "iou_text", "iou_ornament", "iou_sign", "mean_iou"):
        assert 0.0 <= result.row[column] <= 1.0
    _, config = load_checkpoint(result.checkpoint)
    assert config["setting"]["loss"]["dice_weights"] is None
    assert config["model"]["base_channels"] == forge_preset.unet_base_channels


def test_segmenter_needs_records(forge_manifest, forge_store, forge_preset, monkeypatch):
    monkeypatch.setattr("notary_forge.harness.trainer.segmentation_ids", lambda store, split, subset: [])
    with pytest.raises(ConfigError) as exc_info:
        train_segmenter(SEGMENTATION_GRID[1], forge_manifest, forge_preset.segmentation, store=forge_store)
    assert "no training records" in str(exc_info.value)
