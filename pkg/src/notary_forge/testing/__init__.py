"""
Testing utilities for notary_forge.

This package provides pytest fixtures for internal tests and for projects
building on notary_forge.
"""

from .fixtures import (
    forge_corpus_dir,
    forge_corpus_spec,
    forge_manifest,
    forge_preset,
    forge_store,
    notary_record,
    plain_record,
)

__all__ = [
    "forge_preset",
    "forge_corpus_spec",
    "forge_corpus_dir",
    "forge_manifest",
    "forge_store",
    "notary_record",
    "plain_record",
]
