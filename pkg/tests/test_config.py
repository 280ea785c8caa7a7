import logging

from ginkit import config


def test_setting_falls_back_on_missing_names():
    assert config.setting("DEFAULT_VARS") == 2
    assert config.setting("NO_SUCH_SETTING", 7) == 7


def test_max_basis_default(monkeypatch):
    monkeypatch.delenv(config.MAX_BASIS_ENV, raising=False)
    assert config.max_basis_size() == config.ORACLE_MAX_BASIS


def test_max_basis_override(monkeypatch):
    monkeypatch.setenv(config.MAX_BASIS_ENV, " 64 ")
    assert config.max_basis_size() == 64


def test_bad_override_is_ignored_with_a_warning(monkeypatch, caplog):
    monkeypatch.setenv(config.MAX_BASIS_ENV, "-3")
    with caplog.at_level(logging.WARNING, logger="ginkit.config"):
        assert config.max_basis_size() == config.ORACLE_MAX_BASIS
    assert "must be positive" in caplog.text


def test_default_checks_are_known():
    assert set(config.DEFAULT_CHECKS) <= set(config.ALL_CHECKS)
    assert set(config.SWEEP_CHECKS) <= set(config.ALL_CHECKS)
