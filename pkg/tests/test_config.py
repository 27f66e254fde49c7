import pytest

from src.config_loader import CONFIG, _get_bool, _get_int, _get_str


def test_defaults_when_unset(monkeypatch):
    monkeypatch.delenv("OM_FORGE_TEST_VALUE", raising=False)
    assert _get_int("OM_FORGE_TEST_VALUE", 7, minimum=1) == 7
    assert _get_bool("OM_FORGE_TEST_VALUE", True) is True
    assert _get_str("OM_FORGE_TEST_VALUE", "INFO") == "INFO"


def test_blank_counts_as_unset(monkeypatch):
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "  ")
    assert _get_int("OM_FORGE_TEST_VALUE", 3) == 3


def test_integer_minimum(monkeypatch):
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", " 4 ")
    assert _get_int("OM_FORGE_TEST_VALUE", 1, minimum=4) == 4
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "0")
    with pytest.raises(RuntimeError, match="at least 1"):
        _get_int("OM_FORGE_TEST_VALUE", 1, minimum=1)
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "many")
    with pytest.raises(RuntimeError, match="Invalid integer"):
        _get_int("OM_FORGE_TEST_VALUE", 1)


def test_boolean_flags(monkeypatch):
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "Yes")
    assert _get_bool("OM_FORGE_TEST_VALUE") is True
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "off")
    assert _get_bool("OM_FORGE_TEST_VALUE", True) is False
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "maybe")
    with pytest.raises(RuntimeError, match="boolean"):
        _get_bool("OM_FORGE_TEST_VALUE")


def test_log_level_choices(monkeypatch):
    levels = {"DEBUG", "INFO"}
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "debug")
    assert _get_str("OM_FORGE_TEST_VALUE", "INFO", levels) == "DEBUG"
    monkeypatch.setenv("OM_FORGE_TEST_VALUE", "loud")
    with pytest.raises(RuntimeError, match="one of"):
        _get_str("OM_FORGE_TEST_VALUE", "INFO", levels)


def test_config_keys():
    assert CONFIG["threads"] >= 1
    assert CONFIG["log_level"] in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
