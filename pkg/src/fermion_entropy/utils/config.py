import copy
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import yaml

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "defaults.yaml"


@lru_cache(maxsize=None)
def _read_yaml(path: str) -> dict:
    with open(path, "r") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ValueError(f"Configuration file {path} does not contain a mapping")
    return data


def load_config(path: Optional[str] = None) -> dict:
    """
    Load the numerical defaults.

    Args:
        path (Optional[str]): YAML file to read. Defaults to src/config/defaults.yaml.

    Returns:
        dict: A deep copy of the parsed configuration, safe to mutate.
    """
    return copy.deepcopy(_read_yaml(str(path or DEFAULT_CONFIG_PATH)))


def setting(section: str, key: str) -> Any:
    """Return a single value from the default configuration."""
    config = _read_yaml(str(DEFAULT_CONFIG_PATH))
    try:
        return copy.deepcopy(config[section][key])
    except KeyError:
        raise KeyError(f"Missing configuration value '{section}.{key}'") from None


def tolerance(key: str) -> float:
    return float(setting("tolerances", key))
