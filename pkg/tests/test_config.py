import pytest

from app.core import config
from app.core.errors import (
    EXIT_ARGUMENT,
    EXIT_CAP,
    EXIT_VERIFICATION,
    CapExceeded,
    ConfigError,
    PartitionFormatError,
    VerificationFailed,
    exit_code_for,
)


@pytest.fixture(autouse=True)
def fresh_settings():
    config.get_settings.cache_clear()
    yield
    config.get_settings.cache_clear()


def test_defaults(monkeypatch):
    monkeypatch.delenv(config.CAP_OVERRIDE_VAR, raising=False)
    settings = config.get_settings()
    assert settings.caps == config.DEFAULT_CAPS
    assert settings.default_format == "json"


def test_override_only_raises_caps(monkeypatch):
    monkeypatch.setenv(config.CAP_OVERRIDE_VAR, "13")
    settings = config.get_settings()
    assert settings.cap("all") == 13
    assert settings.cap("interval") == config.DEFAULT_CAPS["interval"]


@pytest.mark.parametrize("raw", ["muchos", "-1"])
def test_bad_override(monkeypatch, raw):
    monkeypatch.setenv(config.CAP_OVERRIDE_VAR, raw)
    with pytest.raises(ConfigError):
        config.get_settings()


def test_bad_format(monkeypatch):
    monkeypatch.setenv(config.FORMAT_VAR, "xml")
    with pytest.raises(ConfigError):
        config.get_settings()


@pytest.mark.parametrize("fmt", config.OUTPUT_FORMATS)
def test_every_output_format_is_accepted(monkeypatch, fmt):
    monkeypatch.setenv(config.FORMAT_VAR, fmt.upper())
    assert config.get_settings().default_format == fmt


def test_require_cap(monkeypatch):
    monkeypatch.delenv(config.CAP_OVERRIDE_VAR, raising=False)
    config.require_cap("all", 12)
    with pytest.raises(CapExceeded) as info:
        config.require_cap("all", 13)
    assert (info.value.family, info.value.n, info.value.cap) == ("all", 13, 12)


def test_exit_codes():
    assert exit_code_for(CapExceeded("all", 20, 12)) == EXIT_CAP
    assert exit_code_for(VerificationFailed("lattice", ["x"])) == EXIT_VERIFICATION
    assert exit_code_for(PartitionFormatError("mal")) == EXIT_ARGUMENT
    assert exit_code_for(ValueError("mal")) == EXIT_ARGUMENT
