"""Checked-in scenario presets, each an ordinary JSON config document."""

from __future__ import annotations

import json
from importlib import resources

from .config import RunConfig
from .errors import ConfigError

__all__ = ["list_presets", "load_preset"]


def _preset_dir():
    return resources.files("casimir") / "presets"


def list_presets() -> list[str]:
    return sorted(p.name[:-5] for p in _preset_dir().iterdir()
                  if p.name.endswith(".json"))


def load_preset(name: str) -> RunConfig:
    path = _preset_dir() / f"{name}.json"
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(list_presets())}"
        ) from None
    return RunConfig.from_dict(doc)
