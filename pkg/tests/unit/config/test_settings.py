import pytest
from pathlib import Path

from notary_forge.config import Settings


@pytest.fixture
def mock_env_vars(monkeypatch):
    """Set up test environment variables."""
    env_vars = {
        "FORGE_ENV": "test",
        "FORGE_LOG_LEVEL": "debug",
        "FORGE_DEBUG": "true",
        "FORGE_WORKERS": "2",
    }

    for key, value in env_vars.items():
        monkeypatch.setenv(key, value)

    return env_vars


def test_settings_singleton(mock_env_vars):
    """Test that Settings maintains singleton pattern."""
    settings1 = Settings.get()
    settings2 = Settings.get()
    assert settings1 is settings2

    # Test reload creates new instance
    settings3 = Settings.reload()
    assert settings1 is not settings3


def test_load_from_env(mock_env_vars):
    """Test loading settings from environment variables."""
    settings = Settings.load()

    assert settings.environment == "test"
    assert settings.scale.name == "test"
    assert settings.log_level == "DEBUG"
    assert settings.debug_mode
    assert settings.workers == 2
    assert settings.log_dir is None


def test_defaults_without_env():
    """Test the desk scale and INFO logging are the defaults."""
    settings = Settings.load()

    assert settings.environment == "desk"
    assert settings.scale.corpus.image_size == (64, 64)
    assert settings.log_level == "INFO"
    assert not settings.debug_mode
    assert settings.workers == 1


def test_log_dir(mock_env_vars, monkeypatch, tmp_path):
    """Test FORGE_LOG_DIR becomes a path."""
    monkeypatch.setenv("FORGE_LOG_DIR", str(tmp_path / "logs"))
    settings = Settings.reload()
    assert settings.log_dir == Path(tmp_path / "logs")


def test_invalid_environment(mock_env_vars, monkeypatch):
    """Test handling of invalid environment name."""
    monkeypatch.setenv("FORGE_ENV", "invalid")

    with pytest.raises(ValueError) as exc_info:
        Settings.reload()
    assert "Invalid environment: invalid" in str(exc_info.value)


def test_non_integer_workers(mock_env_vars, monkeypatch):
    """Test a malformed worker count is reported."""
    monkeypatch.setenv("FORGE_WORKERS", "many")

    with pytest.raises(ValueError) as exc_info:
        Settings.reload()
    assert "FORGE_WORKERS must be an integer" in str(exc_info.value)


def test_validation(mock_env_vars):
    """Test settings validation."""
    settings = Settings.get()
    settings.validate()  # Should not raise any exceptions

    settings.workers = 0
    with pytest.raises(ValueError) as exc_info:
        settings.validate()
    assert "Worker count must be at least 1" in str(exc_info.value)

    settings.workers = 1
    settings.log_level = "LOUD"
    with pytest.raises(ValueError) as exc_info:
        settings.validate()
    assert "Unknown log level: LOUD" in str(exc_info.value)


def test_run_metrics_profile(mock_env_vars, monkeypatch):
    """Test FORGE_RUN_METRICS selects a profile and rejects unknown names."""
    assert Settings.load().run_metrics == "default"

    monkeypatch.setenv("FORGE_RUN_METRICS", "Full")
    assert Settings.reload().run_metrics == "full"

    monkeypatch.setenv("FORGE_RUN_METRICS", "chatty")
    with pytest.raises(ValueError) as exc_info:
        Settings.reload()
    assert "Unknown run metrics profile: chatty" in str(exc_info.value)
