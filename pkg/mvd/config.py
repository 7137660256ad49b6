"""
Settings for the mutual-visibility toolkit
Defaults live in data/config/settings.json; environment variables override them
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import json5
import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS_PATH = Path(__file__).resolve().parent.parent / "data" / "config" / "settings.json"

BUDGET_ENV = "MVD_BUDGET"
LOG_LEVEL_ENV = "MVD_LOG_LEVEL"

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')

# (section, key) in the settings file -> Settings attribute
SECTION_KEYS = {
    ('solver', 'budget'): 'solver_budget',
    ('oracle', 'naive_cap'): 'naive_cap',
    ('oracle', 'bruteforce_cap'): 'bruteforce_cap',
    ('output', 'format'): 'output_format',
    ('logging', 'level'): 'log_level',
    ('logging', 'event_log'): 'event_log',
}


class Settings:
    """Runtime knobs for the solver, the oracles and the CLI"""

    FIELDS = {
        'solver_budget': 25,
        'naive_cap': 12,
        'bruteforce_cap': 15,
        'output_format': 'json',
        'log_level': 'WARNING',
        'event_log': None,
    }

    def __init__(self, **overrides: Any):
        for name, default in self.FIELDS.items():
            setattr(self, name, overrides.pop(name, default))
        for name in overrides:
            logger.warning("ignoring unknown setting %r", name)
        self.validate()

    def validate(self):
        for name in ('solver_budget', 'naive_cap', 'bruteforce_cap'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.output_format not in ('json', 'text'):
            raise ConfigError(f"output_format must be 'json' or 'text', got {self.output_format!r}")
        if str(self.log_level).upper() not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(LOG_LEVELS)}, got {self.log_level!r}")

    def as_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in self.FIELDS}

    def __repr__(self) -> str:
        return f"Settings({self.as_dict()!r})"


def _read_file(path: Path) -> Dict[str, Any]:
    """Parse a settings file; YAML by suffix, json5 otherwise"""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            if path.suffix in ('.yaml', '.yml'):
                data = yaml.safe_load(f) or {}
            else:
                data = json5.load(f)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot read settings from {path}: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError(f"settings file {path} must hold a mapping")

    flat: Dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, dict):
            for sub_key, sub_value in value.items():
                name = SECTION_KEYS.get((key, sub_key), f"{key}_{sub_key}")
                flat[name] = sub_value
        else:
            flat[key] = value
    return flat


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load settings from a file (default data/config/settings.json),
    then apply environment overrides
    """
    values: Dict[str, Any] = {}
    path = Path(path) if path else DEFAULT_SETTINGS_PATH

    if path.exists():
        values.update(_read_file(path))
    elif path != DEFAULT_SETTINGS_PATH:
        raise ConfigError(f"settings file {path} not found")
    else:
        logger.debug("no settings file at %s, using defaults", path)

    budget = os.environ.get(BUDGET_ENV)
    if budget:
        try:
            values['solver_budget'] = int(budget)
        except ValueError:
            raise ConfigError(f"{BUDGET_ENV} must be an integer, got {budget!r}") from None

    level = os.environ.get(LOG_LEVEL_ENV)
    if level:
        values['log_level'] = level

    return Settings(**values)
