import pytest

from notary_forge.config import Environments
from notary_forge.errors import ConfigError
from notary_forge.harness import (
    CLASSIFICATION_GRID,
    SEGMENTATION_GRID,
    grid,
    model_config_for,
    run_grid,
    train_config_for,
)
from notary_forge.models import ClassifierConfig, UNetConfig


def test_model_config_per_scale(forge_preset):
    cls = model_config_for(CLASSIFICATION_GRID[1], forge_preset, seed=4, image_size=(32, 32))
    assert isinstance(cls, ClassifierConfig)
    assert cls.topology == "dense" and cls.seed == 4 and cls.input_size == (32, 32)
    seg = model_config_for(SEGMENTATION_GRID[1], forge_preset, seed=4, image_size=(32, 32))
    assert isinstance(seg, UNetConfig)
    assert seg.base_channels == forge_preset.unet_base_channels
    full = model_config_for(CLASSIFICATION_GRID[1], Environments.get_paper_config(), 9, (224, 224))
    assert full.seed == 9 and full.input_size == (224, 224)


def test_train_config_overrides(forge_preset):
    cfg = train_config_for(CLASSIFICATION_GRID[2], forge_preset, seed=3, duration=0)
    assert (cfg.seed, cfg.duration, cfg.batch_size) == (3, 0, forge_preset.classification.batch_size)


def test_grid_csv_is_reproducible(forge_corpus_dir, forge_preset, tmp_path):
    """Test rerunning a grid writes byte-identical results."""
    kwargs = dict(preset=forge_preset, settings=[1, 2], duration=0)
    first = run_grid("cls", [1, 2], forge_corpus_dir, tmp_path / "a", **kwargs)
    second = run_grid("cls", [1, 2], forge_corpus_dir, tmp_path / "b", **kwargs)
    assert first.results.read_bytes() == second.results.read_bytes()
    assert len(first.rows) == 4 and not first.failures
    assert first.summary.is_file()
    assert (tmp_path / "a" / "runs" / "classification-01-dense-seed2" / "model.nfck").is_file()


def test_failed_cell_is_marked(forge_corpus_dir, forge_preset, tmp_path, monkeypatch):
    """Test one failing cell does not stop the grid."""
    real = grid.run_setting

    def flaky(setting, manifest, preset, seed, out_dir=None, store=None, **overrides):
        if seed == 2:
            raise RuntimeError("disk full")
        return real(setting, manifest, preset, seed, out_dir, store, **overrides)

    monkeypatch.setattr(grid, "run_setting", flaky)
    result = run_grid("seg", [1, 2], forge_corpus_dir, tmp_path, preset=forge_preset, settings=[1], duration=0)
    assert [row["status"] for row in sorted(result.rows, key=lambda r: r["seed"])] == ["ok", "failed"]
    assert result.failures[0]["error"] == "RuntimeError: disk full"
    lines = result.results.read_text(encoding="utf-8").splitlines()
    assert lines[2] == "1,2,,,,,,failed"


def test_grid_argument_errors(forge_corpus_dir, tmp_path):
    with pytest.raises(ValueError) as exc_info:
        run_grid("cls", [1], forge_corpus_dir, tmp_path, settings=[13])
    assert "no settings [13]" in str(exc_info.value)
    with pytest.raises(ValueError):
        run_grid("seg", [], forge_corpus_dir, tmp_path)
    with pytest.raises(ConfigError):
        run_grid("detect", [1], forge_corpus_dir, tmp_path)
    with pytest.raises(FileNotFoundError):
        run_grid("cls", [1], tmp_path / "no-corpus", tmp_path)
    with pytest.raises(ConfigError) as exc_info:
        run_grid("seg", [1], forge_corpus_dir, tmp_path, models=["residual"])
    assert "only applies to classification" in str(exc_info.value)


def test_grid_runs_each_requested_topology(forge_corpus_dir, forge_preset, tmp_path):
    """Test a two-topology grid keys rows, runs and the ranking by model."""
    result = run_grid(
        "cls", [1], forge_corpus_dir, tmp_path, preset=forge_preset,
        settings=[1], models=["residual", "dense"], duration=0,
    )
    assert sorted(row["model"] for row in result.rows) == ["dense", "residual"]
    lines = result.results.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("setting,model,seed,")
    assert [line.split(",")[:3] for line in lines[1:]] == [["1", "dense", "1"], ["1", "residual", "1"]]
    for model in ("dense", "residual"):
        assert (tmp_path / "runs" / f"classification-01-{model}-seed1" / "model.nfck").is_file()
    summary = result.summary.read_text(encoding="utf-8")
    assert "| 1 | dense |" in summary and "| 1 | residual |" in summary
