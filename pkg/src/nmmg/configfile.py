"""Plain-text ``key = value`` configuration files.

Blank lines and anything after ``#`` are ignored. Keys are SolverConfig field
names; dashes are accepted in place of underscores.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from .core import SolverConfig

_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}


def _field_types() -> dict:
    defaults = SolverConfig()
    return {f.name: type(getattr(defaults, f.name)) for f in dataclasses.fields(SolverConfig)}


def coerce(key: str, raw: str):
    types = _field_types()
    if key not in types:
        raise KeyError(f"unknown configuration key {key!r}")
    raw = raw.strip()
    if key == "eta":
        return None if raw.lower() in ("", "none") else float(raw)
    if key == "algorithm":
        return raw
    kind = types[key]
    if kind is bool:
        try:
            return _BOOL[raw.lower()]
        except KeyError:
            raise ValueError(f"{key}: expected a boolean, got {raw!r}") from None
    if kind is int:
        return int(raw)
    if kind is float:
        return float(raw)
    return raw


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        out[key] = coerce(key, value)
    return out


def load_config(path, base: SolverConfig | None = None, **overrides) -> SolverConfig:
    values = parse_config_text(Path(path).read_text(encoding="utf-8")) if path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    return dataclasses.replace(base or SolverConfig(), **values)
