"""Synthetic imbalanced document corpus and its on-disk manifest."""

from .builder import assign_splits, corpus_plan, generate_corpus, stratified_counts
from .generator import DocumentStyle, generate_document
from .glyphs import GLYPH_FAMILIES, glyph_polygon
from .importer import Annotation, import_local, read_annotations
from .manifest import MANIFEST_NAME, SCHEMA_VERSION, Manifest, ManifestEntry
from .raster import rasterize_polygon, translate_polygon
from .records import (
    BACKGROUND,
    CLASS_NAMES,
    N_CLASSES,
    ORNAMENT,
    SIGN,
    TEXT,
    DocumentRecord,
    Label,
)
from .spec import CorpusSpec
from .store import RecordStore, load_record

__all__ = [
    "BACKGROUND",
    "TEXT",
    "ORNAMENT",
    "SIGN",
    "CLASS_NAMES",
    "N_CLASSES",
    "Label",
    "DocumentRecord",
    "CorpusSpec",
    "DocumentStyle",
    "generate_document",
    "generate_corpus",
    "corpus_plan",
    "stratified_counts",
    "assign_splits",
    "GLYPH_FAMILIES",
    "glyph_polygon",
    "rasterize_polygon",
    "translate_polygon",
    "Manifest",
    "ManifestEntry",
    "MANIFEST_NAME",
    "SCHEMA_VERSION",
    "Annotation",
    "import_local",
    "read_annotations",
    "RecordStore",
    "load_record",
]
