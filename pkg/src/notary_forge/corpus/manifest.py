"""Versioned JSON manifest of a corpus on disk."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Iterable, Literal, Optional

from pydantic import BaseModel, PrivateAttr, model_validator

from .imageio import file_checksum
from .records import Label
from .spec import SPLIT_NAMES, CorpusSpec

SCHEMA_VERSION = 1
MANIFEST_NAME = "manifest.json"

Split = Literal["train", "val", "test"]


class ManifestEntry(BaseModel):
    id: str
    image: str
    mask: str
    label: Label
    split: Split
    seed: int = 0
    sign_polygon: Optional[list[tuple[int, int]]] = None
    checksums: dict[str, str]


class Manifest(BaseModel):
    """Records with their files, labels, splits and checksums.

    Paths are relative to the manifest's directory, so a corpus directory
    can be moved as a whole.
    """

    schema_version: int = SCHEMA_VERSION
    spec: Optional[CorpusSpec] = None
    records: list[ManifestEntry]

    _root: Path = PrivateAttr(default_factory=Path)

    @model_validator(mode="after")
    def _unique_ids(self) -> "Manifest":
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported manifest schema_version {self.schema_version}, expected {SCHEMA_VERSION}"
            )
        counts = Counter(entry.id for entry in self.records)
        duplicates = sorted(i for i, n in counts.items() if n > 1)
        if duplicates:
            raise ValueError(f"duplicate record ids: {duplicates[:5]}")
        return self

    @property
    def root(self) -> Path:
        return self._root

    def bind(self, root: Path) -> "Manifest":
        self._root = Path(root)
        return self

    def path_of(self, relative: str) -> Path:
        return self._root / relative

    def entry(self, record_id: str) -> ManifestEntry:
        for entry in self.records:
            if entry.id == record_id:
                return entry
        raise KeyError(f"no record with id {record_id}")

    def select(self, split: Optional[str] = None, label: Optional[Label] = None) -> list[ManifestEntry]:
        if split is not None and split not in SPLIT_NAMES:
            raise ValueError(f"unknown split: {split}")
        return [
            e
            for e in self.records
            if (split is None or e.split == split) and (label is None or e.label == label)
        ]

    def split_counts(self) -> dict[str, int]:
        counts = Counter(entry.split for entry in self.records)
        return {name: counts.get(name, 0) for name in SPLIT_NAMES}

    def label_counts(self, split: Optional[str] = None) -> dict[Label, int]:
        counts = Counter(entry.label for entry in self.select(split))
        return {label: counts.get(label, 0) for label in Label}

    def to_json(self) -> str:
        return self.model_dump_json(indent=2) + "\n"

    def save(self, directory: Path) -> Path:
        path = Path(directory) / MANIFEST_NAME
        path.write_text(self.to_json(), encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: Path, check_files: bool = True) -> "Manifest":
        """Read ``manifest.json`` (or the directory holding it)."""
        path = Path(path)
        if path.is_dir():
            path = path / MANIFEST_NAME
        try:
            manifest = cls.model_validate_json(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise FileNotFoundError(f"cannot read manifest {path}: {e}") from e
        manifest.bind(path.parent)
        if check_files:
            missing = [
                rel for rel in manifest._files() if not manifest.path_of(rel).is_file()
            ]
            if missing:
                raise FileNotFoundError(
                    f"{len(missing)} files referenced by {path} are missing, e.g. {missing[0]}"
                )
        return manifest

    def _files(self) -> Iterable[str]:
        for entry in self.records:
            yield entry.image
            yield entry.mask

    def verify(self) -> list[str]:
        """Recompute checksums; returns the relative paths that do not match."""
        bad = []
        for entry in self.records:
            for key in ("image", "mask"):
                relative = getattr(entry, key)
                path = self.path_of(relative)
                if not path.is_file() or file_checksum(path) != entry.checksums.get(key):
                    bad.append(relative)
        return bad
