"""Loading WorldConfig from a flat JSON file plus ``key=value`` overrides.

Precedence: built-in defaults < file < overrides. Keys are WorldConfig field
names; the short parameter names (SR, MR, FV, FUF, FC, MC, BT, LR) are
accepted as aliases.
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

from .virtue import EType
from .world import ConfigError, WorldConfig

ALIASES = {
    "SR": "starting_reserve",
    "MR": "maximum_reserve",
    "FV": "food_value",
    "FUF": "food_update_frequency",
    "FC": "falling_chance",
    "MC": "mutation_chance",
    "BT": "begging_threshold",
    "LR": "learning_rate",
}

_FIELDS = {f.name: f for f in dataclasses.fields(WorldConfig)}
_INT_FIELDS = {"food_update_frequency", "population"}
_BOOL_FIELDS = {"scale_by_magnitude", "learning_enabled", "exemplars_enabled", "bf_use_selfishness"}


class ConfigIOError(OSError):
    """The config file could not be read."""


def canonical_key(key: str) -> str:
    key = key.strip()
    name = ALIASES.get(key, ALIASES.get(key.upper(), key))
    if name not in _FIELDS:
        raise ConfigError(key, "unknown configuration key")
    return name


def coerce(name: str, value: Any) -> Any:
    """Convert a JSON value or command-line string to the field's type."""
    try:
        if name == "etype":
            if isinstance(value, EType):
                return value
            return EType(str(value).strip().lower())
        if name in _BOOL_FIELDS:
            if isinstance(value, bool):
                return value
            text = str(value).strip().lower()
            if text in ("true", "1", "yes", "on"):
                return True
            if text in ("false", "0", "no", "off"):
                return False
            raise ValueError(value)
        if name in _INT_FIELDS:
            if isinstance(value, bool):
                raise ValueError(value)
            if isinstance(value, float):
                if not value.is_integer():
                    raise ValueError(value)
                return int(value)
            return int(str(value).strip())
        if isinstance(value, bool):
            raise ValueError(value)
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(name, f"invalid value {value!r}") from None


def parse_override(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise ConfigError(text, "override must look like key=value")
    key, value = text.split("=", 1)
    return key, value


def read_config_file(path: Union[str, Path]) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigIOError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(str(path), "config file must hold a flat JSON object")
    return data


def parse_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Union[Mapping[str, Any], Sequence[str], None] = None,
    base: Optional[WorldConfig] = None,
) -> WorldConfig:
    """Build a validated WorldConfig. Nothing is returned on any bad key or value."""
    values: dict[str, Any] = {}
    layers = []
    if path is not None:
        layers.append(read_config_file(path))
    if overrides:
        if isinstance(overrides, Mapping):
            layers.append(dict(overrides))
        else:
            layers.append(dict(parse_override(o) for o in overrides))
    for layer in layers:
        for key, value in layer.items():
            name = canonical_key(key)
            values[name] = coerce(name, value)
    cfg = base or WorldConfig()
    try:
        return dataclasses.replace(cfg, **values)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError("config", str(exc)) from None


def config_to_dict(cfg: WorldConfig) -> dict:
    out = {}
    for name in _FIELDS:
        value = getattr(cfg, name)
        out[name] = value.value if isinstance(value, EType) else value
    return out


def write_config(cfg: WorldConfig, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(config_to_dict(cfg), indent=2) + "\n", encoding="utf-8")
