"""Helper module with useful shared functions."""

from typing import Any

import yaml


def format_filename(filename: str, filetype: str) -> str:
    """
    Format a filename, ensuring it ends with a certain filetype extension.

    Args:
        filename: Filename.
        filetype: File extension.

    Returns:
        Formatted filename.
    """
    filetype = "." + filetype if not filetype.startswith(".") else filetype
    return filename if filename.endswith(filetype) else filename + filetype


def yaml_to_dict(filepath: str) -> dict[str, Any]:
    """
    Read a yaml file into a dictionary.

    Args:
        filepath: Path of the yaml file, the ``.yaml`` extension may be left out.

    Returns:
        A dictionary containing all fields in the yaml file, empty for an empty file.

    Raises:
        FileNotFoundError: If the file does not exist.
        ValueError: If the file does not hold a mapping.
    """
    with open(format_filename(filepath, "yaml"), "rb") as f:
        result = yaml.safe_load(f)
    if result is None:
        return {}
    if not isinstance(result, dict):
        raise ValueError(f"{filepath} does not contain a mapping")
    return result


def read_text(path: str) -> str:
    """
    Read a text file given on the command line.

    Args:
        path: Path of the file.

    Returns:
        The file contents.
    """
    with open(path, encoding="utf-8") as f:
        return f.read()
