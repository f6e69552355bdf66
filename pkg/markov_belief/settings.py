"""Configuration of caps and CLI defaults, read from a YAML file and command-line overrides."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields
from typing import Any

import yaml
from loguru import logger
from typeguard import TypeCheckError, check_type

from markov_belief.helper import yaml_to_dict

DEFAULT_CONFIG_PATH = "./config/default_qmb.yaml"
LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")
SETTING_TYPES: dict[str, type] = {
    "enumeration_cap": int,
    "atom_cap": int,
    "strict_filter": bool,
    "max_sample_gap": int,
    "log_level": str,
}


@dataclass(frozen=True)
class Settings:
    """Caps and defaults shared by the library calls the CLI makes."""

    enumeration_cap: int = 10_000_000
    atom_cap: int = 12
    strict_filter: bool = True
    max_sample_gap: int = 3
    log_level: str = "WARNING"

    def __post_init__(self):
        """
        Check the type and range of every setting.

        Raises:
            ValueError: If a setting has the wrong type or is out of range.
        """
        for name, expected in SETTING_TYPES.items():
            value = getattr(self, name)
            if expected is int and isinstance(value, bool):
                raise ValueError(f"{name} should be int but was bool")
            try:
                check_type(value, expected)
            except TypeCheckError as err:
                raise ValueError(
                    f"{name} should be {expected.__name__} but was {type(value).__name__}"
                ) from err
        for name in ("enumeration_cap", "atom_cap", "max_sample_gap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ValueError(f"unknown log_level {self.log_level!r}")

    @classmethod
    def load(
        cls, path: str | None = None, overrides: dict[str, str] | None = None
    ) -> Settings:
        """
        Read settings from a YAML file, then apply overrides.

        Without a path the default file is used if it exists, otherwise the built-in defaults.

        Args:
            path: Path of the configuration file.
            overrides: Parameter names mapped to YAML literals, e.g. ``{"atom_cap": "8"}``.

        Returns:
            The validated Settings.

        Raises:
            FileNotFoundError: If an explicitly given file does not exist.
            ValueError: If a key is unknown or a value is invalid.
        """
        if path is None and not os.path.exists(DEFAULT_CONFIG_PATH):
            logger.debug(f"No {DEFAULT_CONFIG_PATH}, using built-in defaults")
            params: dict[str, Any] = {}
        else:
            params = yaml_to_dict(path or DEFAULT_CONFIG_PATH)
        for name, literal in (overrides or {}).items():
            params[name] = yaml.safe_load(literal)

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(params) - known)
        if unknown:
            raise ValueError(f"unknown settings: {', '.join(unknown)}")
        settings = cls(**params)
        logger.debug(f"Initialized settings:\n\t{asdict(settings)}")
        return settings
