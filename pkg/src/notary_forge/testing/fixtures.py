"""
Pytest fixtures for testing with notary_forge.

These fixtures can be imported by external projects to get a tiny generated
corpus without writing one by hand.

Usage in external test file:
    from notary_forge.testing.fixtures import forge_corpus_spec, forge_manifest

    def test_my_feature(forge_manifest):
        # manifest of a generated 32x32 corpus, bound to its directory
        pass
"""

import os
from pathlib import Path

import pytest

from ..config import Environments, ScalePreset
from ..corpus import CorpusSpec, Label, Manifest, RecordStore, generate_corpus, generate_document


@pytest.fixture(scope="session")
def forge_preset() -> ScalePreset:
    """The ``test`` scale: 32×32 pages and runs of a few iterations."""
    return Environments.get_test_config()


@pytest.fixture(scope="session")
def forge_corpus_spec() -> CorpusSpec:
    """
    Provide a tiny corpus specification.

    Sizes can be overridden through environment variables:
    - FORGE_TEST_NON_NOTARY (default: 48)
    - FORGE_TEST_NOTARY (default: 12)

    Returns:
        CorpusSpec for 32×32 pages
    """
    return CorpusSpec(
        n_non_notary=int(os.getenv("FORGE_TEST_NON_NOTARY", "48")),
        n_notary=int(os.getenv("FORGE_TEST_NOTARY", "12")),
        image_size=(32, 32),
        style_seed=7,
    )


@pytest.fixture(scope="session")
def forge_corpus_dir(forge_corpus_spec: CorpusSpec, tmp_path_factory) -> Path:
    """
    Session-scoped directory holding the generated tiny corpus.

    Args:
        forge_corpus_spec: Specification to render

    Returns:
        Path of the corpus directory (contains manifest.json)
    """
    root = tmp_path_factory.mktemp("forge-corpus")
    generate_corpus(forge_corpus_spec, root)
    return root


@pytest.fixture
def forge_manifest(forge_corpus_dir: Path) -> Manifest:
    """Freshly loaded manifest of the session corpus."""
    return Manifest.load(forge_corpus_dir)


@pytest.fixture
def forge_store(forge_manifest: Manifest) -> RecordStore:
    return RecordStore(forge_manifest)


@pytest.fixture
def notary_record(forge_corpus_spec: CorpusSpec):
    """A single in-memory notary document."""
    return generate_document(11, Label.NOTARY, forge_corpus_spec, doc_id="nt-fixture")


@pytest.fixture
def plain_record(forge_corpus_spec: CorpusSpec):
    """A single in-memory non-notary document."""
    return generate_document(12, Label.NON_NOTARY, forge_corpus_spec, doc_id="nn-fixture")
