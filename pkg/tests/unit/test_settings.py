"""Tests for the Settings class."""

from unittest.mock import patch

import pytest

from markov_belief.settings import Settings

test_dir = "./tests/_configs/settings/"


def test_defaults():
    """Test the built-in defaults."""
    settings = Settings()
    assert settings.enumeration_cap == 10_000_000
    assert settings.atom_cap == 12
    assert settings.strict_filter is True
    assert settings.max_sample_gap == 3
    assert settings.log_level == "WARNING"


@pytest.mark.parametrize(
    "params",
    [
        {"atom_cap": "12"},
        {"atom_cap": True},
        {"strict_filter": 1},
        {"enumeration_cap": 0},
        {"max_sample_gap": -1},
        {"log_level": "LOUD"},
    ],
)
def test_invalid_values(params):
    """Test that wrongly typed or out-of-range values are refused."""
    with pytest.raises(ValueError):
        Settings(**params)


def test_load_file():
    """Test reading a configuration file."""
    settings = Settings.load(test_dir + "TEST_SETTINGS.yaml")
    assert settings.enumeration_cap == 5000
    assert settings.atom_cap == 8
    assert settings.strict_filter is False
    assert settings.max_sample_gap == 3


def test_load_overrides():
    """Test that overrides are parsed as YAML literals and win over the file."""
    settings = Settings.load(
        test_dir + "TEST_SETTINGS", {"atom_cap": "6", "strict_filter": "true", "log_level": "DEBUG"}
    )
    assert settings.atom_cap == 6
    assert settings.strict_filter is True
    assert settings.log_level == "DEBUG"


def test_load_errors():
    """Test unknown keys, bad types and missing files."""
    with pytest.raises(ValueError, match="unknown settings: seed"):
        Settings.load(test_dir + "TEST_UNKNOWN_KEY.yaml")
    with pytest.raises(ValueError, match="atom_cap"):
        Settings.load(test_dir + "TEST_BAD_TYPE.yaml")
    with pytest.raises(ValueError, match="unknown settings: colour"):
        Settings.load(test_dir + "TEST_SETTINGS.yaml", {"colour": "1"})
    with pytest.raises(FileNotFoundError):
        Settings.load(test_dir + "MISSING.yaml")


@patch("markov_belief.settings.os.path.exists", return_value=False)
def test_load_without_default_file(mock_exists):
    """Test that the built-in defaults apply when the default file is absent."""
    assert Settings.load(overrides={"atom_cap": "5"}) == Settings(atom_cap=5)
    mock_exists.assert_any_call("./config/default_qmb.yaml")
