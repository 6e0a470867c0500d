"""Import of local scans annotated with sign polygons."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, ValidationError

from ..errors import ConfigError
from .builder import assign_splits, write_record
from .imageio import load_image
from .manifest import Manifest, ManifestEntry, Split
from .raster import rasterize_polygon
from .records import SIGN, DocumentRecord, Label
from .spec import DEFAULT_SPLITS

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".tif", ".tiff", ".bmp"}


class Annotation(BaseModel):
    """One entry of the annotation file: ``{image, label, polygon: [[x, y], ...]}``."""

    image: str
    label: Optional[Label] = None
    polygon: list[tuple[float, float]] = []
    split: Optional[Split] = None


def read_annotations(path: Path) -> list[Annotation]:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read annotations {path}: {e}") from e
    if not isinstance(raw, list):
        raise ConfigError(f"annotations must be a JSON list, got {type(raw).__name__}")
    try:
        return [Annotation.model_validate(item) for item in raw]
    except ValidationError as e:
        raise ConfigError(f"invalid annotation in {path}: {e}") from e


def annotate(image: np.ndarray, annotation: Annotation, record_id: str) -> DocumentRecord:
    """Rasterize the sign polygon; an empty polygon means a non-notary document."""
    shape = image.shape[:2]
    mask = np.zeros(shape, dtype=np.uint8)
    polygon = None
    if annotation.polygon:
        mask[rasterize_polygon(annotation.polygon, shape)] = SIGN
        polygon = [(int(round(x)), int(round(y))) for x, y in annotation.polygon]
        if not np.array_equal(rasterize_polygon(polygon, shape), mask == SIGN):
            # fractional vertices: keep the mask, drop the outline
            polygon = None
    label = Label.NOTARY if mask.any() else Label.NON_NOTARY
    if annotation.label is not None and annotation.label is not label:
        raise ConfigError(
            f"{annotation.image}: label {annotation.label.value} contradicts its polygon"
        )
    return DocumentRecord(
        id=record_id,
        image=image.astype(np.float32) / 255.0,
        mask=mask,
        label=label,
        sign_polygon=polygon,
    )


def import_local(
    directory: Path,
    annotations: Path,
    out_dir: Optional[Path] = None,
    split_fractions: Sequence[float] = DEFAULT_SPLITS,
    seed: int = 0,
) -> Manifest:
    """Build a manifest from real images and their polygon annotations.

    Every image in ``directory`` needs an annotation entry and every entry
    needs its image. Images are re-encoded as PNG next to their masks in
    ``out_dir`` (default: ``directory/imported``).
    """
    directory = Path(directory)
    root = Path(out_dir) if out_dir is not None else directory / "imported"
    entries = read_annotations(annotations)
    by_name = {entry.image: entry for entry in entries}
    images = sorted(
        p.name for p in directory.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )
    unannotated = sorted(set(images) - set(by_name))
    if unannotated:
        raise ConfigError(f"missing annotation for {len(unannotated)} images, e.g. {unannotated[0]}")
    absent = sorted(set(by_name) - set(images))
    if absent:
        raise ConfigError(f"annotated image not found in {directory}: {absent[0]}")

    (root / "images").mkdir(parents=True, exist_ok=True)
    (root / "masks").mkdir(parents=True, exist_ok=True)
    records = []
    for index, name in enumerate(images):
        record = annotate(load_image(directory / name), by_name[name], f"local-{index:06d}")
        records.append((record, write_record(record, root), by_name[name].split))

    splits: dict[str, str] = {}
    for label in Label:
        ids = [r.id for r, _, split in records if r.label is label and split is None]
        splits.update(assign_splits(ids, split_fractions, seed, "import", label.value))

    manifest = Manifest(
        records=[
            ManifestEntry(
                id=record.id,
                image=image_rel,
                mask=mask_rel,
                label=record.label,
                split=split or splits[record.id],
                sign_polygon=record.sign_polygon,
                checksums=checksums,
            )
            for record, (image_rel, mask_rel, checksums), split in records
        ]
    ).bind(root)
    manifest.save(root)
    logger.info("Imported {} images from {} into {}", len(records), directory, root)
    return manifest
