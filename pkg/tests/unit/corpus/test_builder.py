import json

import numpy as np
import pytest
from pydantic import ValidationError

from notary_forge.corpus import (
    MANIFEST_NAME,
    CorpusSpec,
    Label,
    Manifest,
    RecordStore,
    assign_splits,
    corpus_plan,
    generate_corpus,
    load_record,
    stratified_counts,
)
from notary_forge.corpus.spec import DEFAULT_SPLITS
from notary_forge.errors import ConfigError


def test_desk_split_counts():
    """Test the per-label stratified split of the 3300-document corpus."""
    non_notary = stratified_counts(3200, DEFAULT_SPLITS)
    notary = stratified_counts(100, DEFAULT_SPLITS)
    assert [a + b for a, b in zip(non_notary, notary)] == [2201, 274, 825]
    assert notary == [67, 8, 25]


@pytest.mark.parametrize("n", [0, 1, 3, 7, 12, 101])
def test_stratified_counts_sum(n):
    counts = stratified_counts(n, DEFAULT_SPLITS)
    assert sum(counts) == n
    assert min(counts) >= 0
    if n >= 3:
        assert min(counts) >= 1


def test_assign_splits_is_deterministic():
    ids = [f"doc-{i}" for i in range(30)]
    first = assign_splits(ids, DEFAULT_SPLITS, 1, "notary")
    assert first == assign_splits(ids, DEFAULT_SPLITS, 1, "notary")
    assert first != assign_splits(ids, DEFAULT_SPLITS, 2, "notary")
    assert set(first) == set(ids)


def test_corpus_plan_order():
    plan = corpus_plan(CorpusSpec(n_non_notary=2, n_notary=1, image_size=(32, 32)))
    assert [doc_id for doc_id, _, _ in plan] == ["nn-000000", "nn-000001", "nt-000000"]
    assert plan[2][1] is Label.NOTARY


def test_generated_corpus_layout(forge_manifest, forge_corpus_spec):
    """Test the session corpus has every file, label and split."""
    assert len(forge_manifest.records) == forge_corpus_spec.n_total
    assert forge_manifest.spec == forge_corpus_spec
    assert forge_manifest.label_counts()[Label.NOTARY] == forge_corpus_spec.n_notary
    counts = forge_manifest.split_counts()
    assert sum(counts.values()) == forge_corpus_spec.n_total
    assert all(count > 0 for count in counts.values())
    assert forge_manifest.verify() == []


def test_records_round_trip_through_png(forge_manifest, forge_store):
    entry = forge_manifest.select("train", Label.NOTARY)[0]
    record = load_record(forge_manifest, entry.id)
    record.validate()
    assert record.is_notary
    again = forge_store.get(entry.id)
    np.testing.assert_array_equal(record.image, again.image)
    np.testing.assert_array_equal(record.mask, again.mask)


def test_store_hands_out_copies(forge_store):
    record_id = forge_store.ids("test")[0]
    first = forge_store.get(record_id)
    first.mask[:] = 3
    assert not (forge_store.get(record_id).mask == 3).all()
    assert record_id in forge_store
    with pytest.raises(KeyError):
        forge_store.get("missing")


def test_generation_is_independent_of_workers(tmp_path):
    """Test serial and parallel rendering write identical corpora."""
    spec = CorpusSpec(n_non_notary=6, n_notary=3, image_size=(32, 32), style_seed=3)
    serial = generate_corpus(spec, tmp_path / "serial", workers=1)
    parallel = generate_corpus(spec, tmp_path / "parallel", workers=2)
    assert serial.to_json() == parallel.to_json()
    assert (tmp_path / "serial" / MANIFEST_NAME).read_bytes() == (
        tmp_path / "parallel" / MANIFEST_NAME
    ).read_bytes()


def test_corpus_without_notary_documents(tmp_path):
    with pytest.raises(ConfigError) as exc_info:
        generate_corpus(CorpusSpec(n_notary=0, n_non_notary=3, image_size=(32, 32)), tmp_path)
    assert "at least one notary document" in str(exc_info.value)


def test_verify_detects_tampering(tmp_path):
    spec = CorpusSpec(n_non_notary=3, n_notary=1, image_size=(32, 32))
    manifest = generate_corpus(spec, tmp_path)
    target = manifest.path_of(manifest.records[0].mask)
    target.write_bytes(target.read_bytes() + b"\0")
    assert manifest.verify() == [manifest.records[0].mask]


def test_load_reports_missing_files(tmp_path):
    """Test loading a manifest whose files are gone."""
    manifest = generate_corpus(CorpusSpec(n_non_notary=2, n_notary=1, image_size=(32, 32)), tmp_path)
    manifest.path_of(manifest.records[1].image).unlink()
    with pytest.raises(FileNotFoundError) as exc_info:
        Manifest.load(tmp_path)
    assert "missing" in str(exc_info.value)
    assert len(Manifest.load(tmp_path, check_files=False).records) == 3


def test_load_without_manifest(tmp_path):
    with pytest.raises(FileNotFoundError):
        Manifest.load(tmp_path / "nowhere")


def test_manifest_rejects_duplicates_and_versions(forge_manifest):
    data = json.loads(forge_manifest.to_json())
    with pytest.raises(ValidationError) as exc_info:
        Manifest.model_validate({**data, "records": data["records"] + data["records"][:1]})
    assert "duplicate record ids" in str(exc_info.value)
    with pytest.raises(ValidationError) as exc_info:
        Manifest.model_validate({**data, "schema_version": 99})
    assert "unsupported manifest schema_version" in str(exc_info.value)


def test_select_unknown_split(forge_manifest):
    with pytest.raises(ValueError):
        forge_manifest.select("holdout")


def test_store_preload_and_masks(forge_manifest):
    store = RecordStore(forge_manifest).preload()
    assert len(store) == len(forge_manifest.records)
    ids = store.ids("train", Label.NOTARY)
    masks = list(store.masks(ids))
    assert len(masks) == len(ids)
    assert all((mask == 3).any() for mask in masks)
