"""Loading manifest records into memory."""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .imageio import load_image, load_mask
from .manifest import Manifest
from .records import DocumentRecord, Label


def load_record(manifest: Manifest, record_id: str) -> DocumentRecord:
    entry = manifest.entry(record_id)
    return DocumentRecord(
        id=entry.id,
        image=load_image(manifest.path_of(entry.image)).astype(np.float32) / 255.0,
        mask=load_mask(manifest.path_of(entry.mask)),
        label=entry.label,
        sign_polygon=list(entry.sign_polygon) if entry.sign_polygon is not None else None,
        seed=entry.seed,
    )


class RecordStore:
    """Caches the 8-bit pixels of a manifest's records.

    Records handed out are fresh float copies, so callers may modify them.
    """

    def __init__(self, manifest: Manifest):
        self.manifest = manifest
        self._entries = {entry.id: entry for entry in manifest.records}
        self._pixels: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._entries

    def ids(self, split: Optional[str] = None, label: Optional[Label] = None) -> list[str]:
        return [entry.id for entry in self.manifest.select(split, label)]

    def label(self, record_id: str) -> Label:
        return self._entries[record_id].label

    def preload(self, ids: Optional[Iterable[str]] = None) -> "RecordStore":
        for record_id in ids if ids is not None else self._entries:
            self._load(record_id)
        return self

    def _load(self, record_id: str) -> tuple[np.ndarray, np.ndarray]:
        if record_id not in self._pixels:
            entry = self._entries[record_id]
            self._pixels[record_id] = (
                load_image(self.manifest.path_of(entry.image)),
                load_mask(self.manifest.path_of(entry.mask)),
            )
        return self._pixels[record_id]

    def get(self, record_id: str) -> DocumentRecord:
        if record_id not in self._entries:
            raise KeyError(f"no record with id {record_id}")
        entry = self._entries[record_id]
        pixels, mask = self._load(record_id)
        return DocumentRecord(
            id=entry.id,
            image=pixels.astype(np.float32) / 255.0,
            mask=mask.copy(),
            label=entry.label,
            sign_polygon=list(entry.sign_polygon) if entry.sign_polygon is not None else None,
            seed=entry.seed,
        )

    def masks(self, ids: Iterable[str]) -> Iterable[np.ndarray]:
        for record_id in ids:
            yield self._load(record_id)[1]
