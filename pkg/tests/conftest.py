import sys

import pytest
from loguru import logger

from notary_forge.config import Settings
from notary_forge.testing.fixtures import (  # noqa: F401
    forge_corpus_dir,
    forge_corpus_spec,
    forge_manifest,
    forge_preset,
    forge_store,
    notary_record,
    plain_record,
)


def pytest_addoption(parser):
    """Add custom command line options."""
    parser.addoption(
        "--experiments",
        action="store_true",
        default=False,
        help="Run the directional training experiments (long CPU runs)",
    )


def pytest_configure(config):
    """Configure pytest."""
    config.addinivalue_line(
        "markers", "experiment: directional training experiment, needs --experiments"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--experiments"):
        return
    skip = pytest.mark.skip(reason="needs --experiments")
    for item in items:
        if "experiment" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default FORGE_* settings and ends with a plain stderr sink."""
    for var in ("FORGE_ENV", "FORGE_LOG_LEVEL", "FORGE_LOG_DIR", "FORGE_DEBUG", "FORGE_WORKERS"):
        monkeypatch.delenv(var, raising=False)
    Settings._instance = None
    yield
    Settings._instance = None
    logger.remove()
    logger.add(sys.__stderr__, level="WARNING")
