"""Corpus generation: documents, stratified splits and the manifest."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np
from loguru import logger

from ..errors import ConfigError
from ..rng import derive_seed, make_rng
from .generator import generate_document
from .imageio import file_checksum, save_image, save_mask
from .manifest import Manifest, ManifestEntry
from .records import DocumentRecord, Label
from .spec import SPLIT_NAMES, CorpusSpec

IMAGE_DIR = "images"
MASK_DIR = "masks"


def stratified_counts(n: int, fractions: Sequence[float]) -> list[int]:
    """Rounded split sizes for ``n`` items that sum to ``n``.

    Every split with a positive fraction gets at least one item when ``n``
    allows it.
    """
    counts = [int(round(n * f)) for f in fractions[:-1]]
    counts.append(n - sum(counts))
    if counts[-1] < 0:
        counts[0] += counts[-1]
        counts[-1] = 0
    for i, fraction in enumerate(fractions):
        if fraction > 0 and counts[i] == 0 and n >= len(fractions):
            donor = int(np.argmax(counts))
            counts[donor] -= 1
            counts[i] += 1
    return counts


def assign_splits(ids: Sequence[str], fractions: Sequence[float], *seed_parts) -> dict[str, str]:
    """Shuffle ``ids`` with a derived stream and cut them by ``fractions``."""
    order = make_rng(*seed_parts, "split").permutation(len(ids))
    counts = stratified_counts(len(ids), fractions)
    splits: dict[str, str] = {}
    start = 0
    for name, count in zip(SPLIT_NAMES, counts):
        for index in order[start : start + count]:
            splits[ids[int(index)]] = name
        start += count
    return splits


def corpus_plan(spec: CorpusSpec) -> list[tuple[str, Label, int]]:
    """Ids, labels and per-document seeds, in manifest order."""
    plan = []
    for label, count, prefix in (
        (Label.NON_NOTARY, spec.n_non_notary, "nn"),
        (Label.NOTARY, spec.n_notary, "nt"),
    ):
        for index in range(count):
            doc_id = f"{prefix}-{index:06d}"
            plan.append((doc_id, label, derive_seed(spec.style_seed, "doc", doc_id)))
    return plan


def write_record(record: DocumentRecord, root: Path) -> tuple[str, str, dict[str, str]]:
    image_rel = f"{IMAGE_DIR}/{record.id}.png"
    mask_rel = f"{MASK_DIR}/{record.id}.png"
    try:
        save_image(root / image_rel, record.image)
        save_mask(root / mask_rel, record.mask)
    except OSError as e:
        raise RuntimeError(f"failed to write record {record.id} under {root}: {e}") from e
    checksums = {"image": file_checksum(root / image_rel), "mask": file_checksum(root / mask_rel)}
    return image_rel, mask_rel, checksums


def _render(args) -> tuple[str, str, dict[str, str], list | None]:
    doc_id, label, seed, spec, root = args
    record = generate_document(seed, label, spec, doc_id=doc_id)
    image_rel, mask_rel, checksums = write_record(record, root)
    return image_rel, mask_rel, checksums, record.sign_polygon


def generate_corpus(spec: CorpusSpec, out_dir: Path, workers: int = 1) -> Manifest:
    """Render every document of ``spec`` into ``out_dir`` and write the manifest.

    Output bytes do not depend on ``workers``.
    """
    if spec.n_notary == 0:
        raise ConfigError("a corpus needs at least one notary document")
    root = Path(out_dir)
    (root / IMAGE_DIR).mkdir(parents=True, exist_ok=True)
    (root / MASK_DIR).mkdir(parents=True, exist_ok=True)

    plan = corpus_plan(spec)
    splits: dict[str, str] = {}
    for label in Label:
        ids = [doc_id for doc_id, lab, _ in plan if lab is label]
        splits.update(assign_splits(ids, spec.split_fractions, spec.style_seed, label.value))

    jobs = [(doc_id, label, seed, spec, root) for doc_id, label, seed in plan]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rendered = list(pool.map(_render, jobs, chunksize=64))
    else:
        rendered = [_render(job) for job in jobs]

    entries = [
        ManifestEntry(
            id=doc_id,
            image=image_rel,
            mask=mask_rel,
            label=label,
            split=splits[doc_id],
            seed=seed,
            sign_polygon=polygon,
            checksums=checksums,
        )
        for (doc_id, label, seed), (image_rel, mask_rel, checksums, polygon) in zip(plan, rendered)
    ]
    manifest = Manifest(spec=spec, records=entries).bind(root)
    manifest.save(root)
    logger.bind(out=str(root)).info(
        "Generated corpus: {} documents ({} notary), splits {}",
        len(entries),
        spec.n_notary,
        manifest.split_counts(),
    )
    return manifest
