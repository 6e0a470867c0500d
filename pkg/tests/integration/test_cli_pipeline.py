"""End-to-end runs of the ``forge`` command on a tiny corpus."""

import csv
import json

import pytest

from notary_forge.harness.cli import EXIT_OK, main


@pytest.fixture
def tiny_corpus(tmp_path, monkeypatch):
    monkeypatch.setenv("FORGE_ENV", "test")
    spec = tmp_path / "spec.json"
    spec.write_text(
        json.dumps({"n_non_notary": 24, "n_notary": 9, "image_size": [32, 32], "style_seed": 2}),
        encoding="utf-8",
    )
    corpus = tmp_path / "corpus"
    assert main(["corpus", "generate", "--spec", str(spec), "--out", str(corpus)]) == EXIT_OK
    return corpus


def test_generate_train_grid_report(tiny_corpus, tmp_path, capsys):
    """Test the full command sequence from corpus to markdown summary."""
    run_dir = tmp_path / "single"
    code = main(["train", "cls", "--setting", "8", "--seed", "1", "--model", "residual",
                 "--corpus", str(tiny_corpus), "--out", str(run_dir), "--duration", "2"])
    assert code == EXIT_OK
    assert "classification-08 seed 1" in capsys.readouterr().out
    assert (run_dir / "model.nfck").is_file()
    assert json.loads((run_dir / "run.json").read_text(encoding="utf-8"))["metrics"]["step_count"] == 2

    results = tmp_path / "results"
    code = main(["grid", "cls", "--seeds", "1,2", "--settings", "1,10",
                 "--model", "both", "--corpus", str(tiny_corpus), "--out", str(results), "--duration", "1"])
    assert code == EXIT_OK
    code = main(["grid", "seg", "--settings", "5", "--corpus", str(tiny_corpus),
                 "--out", str(results), "--duration", "1"])
    assert code == EXIT_OK

    with (results / "cls_results.csv").open(encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    assert [(r["setting"], r["model"], r["seed"]) for r in rows] == [
        (setting, model, seed)
        for setting in ("1", "10")
        for model in ("dense", "residual")
        for seed in ("1", "2")
    ]
    assert all(r["status"] == "ok" for r in rows)
    with (results / "seg_results.csv").open(encoding="utf-8", newline="") as f:
        (seg_row,) = list(csv.DictReader(f))
    assert seg_row["seed"] == "1"

    assert main(["report", "--in", str(results), "--out", str(tmp_path / "report.md")]) == EXIT_OK
    report = (tmp_path / "report.md").read_text(encoding="utf-8")
    assert "Classification settings" in report and "Segmentation settings" in report


def test_grid_reruns_are_byte_identical(tiny_corpus, tmp_path):
    for name in ("a", "b"):
        code = main(["grid", "seg", "--settings", "1", "--corpus", str(tiny_corpus),
                     "--out", str(tmp_path / name), "--duration", "1"])
        assert code == EXIT_OK
    assert (tmp_path / "a" / "seg_results.csv").read_bytes() == (tmp_path / "b" / "seg_results.csv").read_bytes()
