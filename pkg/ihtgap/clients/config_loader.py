"""Read and write experiment configs and ground truths as flat config files (key = value text or YAML)."""
import logging
import os
import re
from typing import Any, Dict, List

import yaml

from ihtgap.models.experiment_config import ExperimentConfig
from ihtgap.models.ground_truth import GroundTruth

logger = logging.getLogger("IhtGap.ConfigLoader")

PRESET_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "presets")
CONFIG_SUFFIXES = (".yaml", ".yml", ".cfg")


def list_presets() -> List[str]:
    """Names of the sweep configs shipped with the package."""
    return sorted(os.path.splitext(name)[0] for name in os.listdir(PRESET_DIR) if name.endswith(".yaml"))


def resolve_config_path(name_or_path: str) -> str:
    """
    Map a file path or preset name (with or without suffix) to a config file.

    Raises:
        FileNotFoundError: If neither a file nor a preset matches
    """
    if os.path.isfile(name_or_path):
        return name_or_path
    stem = os.path.basename(name_or_path)
    for suffix in CONFIG_SUFFIXES:
        if stem.endswith(suffix):
            stem = stem[:-len(suffix)]
    preset = os.path.join(PRESET_DIR, f"{stem}.yaml")
    if os.path.isfile(preset):
        return preset
    raise FileNotFoundError(f"no config file or preset named '{name_or_path}' (presets: {', '.join(list_presets())})")


KEY_VALUE_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)$")


def parse_key_value(text: str, path: str = "<config>") -> Dict[str, Any]:
    """
    Parse flat `key = value` config text.

    Each value is read as a YAML scalar or flow list, so `k = [50,75,100,200]`
    gives a list of ints. Blank lines and `#` comments are skipped.

    Raises:
        ValueError: On a line that is not `key = value` or a repeated key
    """
    config: Dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        match = KEY_VALUE_LINE.match(stripped)
        if match is None:
            raise ValueError(f"{path}:{number}: expected 'key = value', got '{stripped}'")
        key, raw = match.group(1), match.group(2).strip()
        if key in config:
            raise ValueError(f"{path}:{number}: duplicate key '{key}'")
        try:
            config[key] = yaml.safe_load(raw) if raw else None
        except yaml.YAMLError as e:
            raise ValueError(f"{path}:{number}: cannot read value of '{key}': {e}") from e
    return config


def _is_key_value(text: str) -> bool:
    lines = [line.strip() for line in text.splitlines()]
    return any(KEY_VALUE_LINE.match(line) for line in lines if line and not line.startswith("#"))


def read_config(path: str) -> Dict[str, Any]:
    """Read a flat config file, either `key = value` text or a YAML mapping."""
    with open(path, "r", encoding="utf-8") as infile:
        text = infile.read()
    if _is_key_value(text):
        return parse_key_value(text, path)
    config = yaml.safe_load(text)
    if not isinstance(config, dict):
        raise ValueError(f"{path}: expected a mapping of keys to values")
    return config


def write_config(path: str, config: Dict[str, Any]) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as outfile:
        outfile.write(yaml.safe_dump(config, sort_keys=False, default_flow_style=None))
    return path


def load_experiment_config(name_or_path: str, **overrides) -> ExperimentConfig:
    """
    Load and validate a sweep config.

    Args:
        name_or_path: Config file path or preset name
        **overrides: Keys replacing those in the file (None values are ignored)

    Returns:
        ExperimentConfig

    Raises:
        FileNotFoundError: If the config cannot be found
        pydantic.ValidationError: If a key is unknown or a value invalid
    """
    path = resolve_config_path(name_or_path)
    values = read_config(path)
    values.setdefault("name", os.path.splitext(os.path.basename(path))[0])
    values.update({key: value for key, value in overrides.items() if value is not None})
    logger.debug(f"Loaded experiment config from {path}")
    return ExperimentConfig(**values)


def write_experiment_config(config: ExperimentConfig, path: str) -> str:
    return write_config(path, config.model_dump(mode="json"))


def write_truth(truth: GroundTruth, path: str) -> str:
    """Write a ground truth so that `read_truth` restores it exactly."""
    return write_config(path, truth.to_config_dict())


def read_truth(path: str) -> GroundTruth:
    return GroundTruth.from_config_dict(read_config(path))
