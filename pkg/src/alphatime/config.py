"""Flat ``key = value`` experiment configuration.

One assignment per line; ``#`` starts a comment.  Values are typed by the
experiment's field table:

=========  ==========================================  ==================
type       accepted text                               example
=========  ==========================================  ==================
int        integer literal or integral float            ``N = 1e6``
float      float literal                                ``t = 0.5``
bool       ``true`` / ``false``                         ``two_stage = true``
str        raw text                                     ``f = sin(x)+sin(2x)``
alpha      fraction ``l/m`` or number                   ``alpha = 1/2``
floats     comma-separated floats, optional brackets    ``t_grid = [0.5, 1, 2]``
alphas     comma-separated fractions                    ``alpha = 1/2, 1/3``
=========  ==========================================  ==================
"""
from __future__ import annotations

import difflib
import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .sampling import AlphaIndex


class ConfigError(ValueError):
    """Invalid configuration text or field value."""


@dataclass(frozen=True)
class FieldSpec:
    type: str
    default: object
    help: str = ""


COMMON_FIELDS = {
    "experiment": FieldSpec("str", None, "experiment id"),
    "seed": FieldSpec("int", 42, "root seed for all random streams"),
    "workers": FieldSpec("int", 1, "worker processes for Monte Carlo"),
    "tolerance": FieldSpec("float", None, "override of the main acceptance tolerance"),
}


def _parse_float(text: str) -> float:
    try:
        return float(Fraction(text.strip())) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a number: {text!r}") from exc


def _split_list(text: str) -> list[str]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    items = [p.strip().strip("\"'") for p in body.split(",")]
    if any(not p for p in items):
        raise ConfigError(f"empty list item in {text!r}")
    return items


def coerce(kind: str, text: str):
    """Parse ``text`` as a value of field type ``kind``."""
    if kind == "str":
        return text.strip().strip("\"'")
    if kind == "float":
        return _parse_float(text)
    if kind == "int":
        v = _parse_float(text)
        if not math.isfinite(v) or v != int(v):
            raise ConfigError(f"not an integer: {text!r}")
        return int(v)
    if kind == "bool":
        low = text.strip().lower()
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise ConfigError(f"not a boolean: {text!r}")
    if kind == "alpha":
        try:
            return str(AlphaIndex.of(text.strip().strip("\"'")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid alpha {text!r}: {exc}") from exc
    if kind == "floats":
        return [_parse_float(p) for p in _split_list(text)]
    if kind == "alphas":
        return [coerce("alpha", p) for p in _split_list(text)]
    raise ConfigError(f"unknown field type {kind!r}")


def parse_text(text: str) -> dict[str, str]:
    """Raw ``key -> value text`` pairs; duplicate keys are rejected."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" in body:
            key, value = body.split("=", 1)
        elif ":" in body:
            key, value = body.split(":", 1)
        else:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key = key.strip()
        if not key.isidentifier():
            raise ConfigError(f"line {lineno}: invalid key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()
    return raw


@dataclass
class ExperimentConfig:
    """Fully resolved configuration; ``values`` holds every field with defaults filled in."""

    experiment: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def canonical(self) -> str:
        return json.dumps({"experiment": self.experiment, **self.values}, sort_keys=True, separators=(",", ":"))

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()

    def as_dict(self) -> dict:
        return {"experiment": self.experiment, **dict(sorted(self.values.items()))}


def resolve(experiment: str, raw: dict[str, str], fields: dict[str, FieldSpec],
            overrides: dict | None = None) -> ExperimentConfig:
    """Type-check ``raw`` against ``fields`` (plus the common ones) and fill defaults."""
    table = {**COMMON_FIELDS, **fields}
    values = {}
    for key, text in raw.items():
        if key not in table:
            near = difflib.get_close_matches(key, table, n=1)
            hint = f"; did you mean {near[0]!r}?" if near else ""
            raise ConfigError(f"unknown key {key!r} for experiment {experiment}{hint}")
        values[key] = coerce(table[key].type, text)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    named = values.pop("experiment", experiment)
    if named != experiment:
        raise ConfigError(f"config names experiment {named!r} but {experiment!r} was requested")
    for key, spec in table.items():
        if key != "experiment":
            values.setdefault(key, spec.default)
    if values["workers"] < 1:
        raise ConfigError("workers must be >= 1")
    return ExperimentConfig(experiment, values)


def load(path: str | Path) -> dict[str, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_text(text)
