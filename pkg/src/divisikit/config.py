"""Run configuration: defaults, config file and command-line overrides.

The config file holds `key = value` lines, optionally under a
`[divisikit]` header; its path comes from DIVISIKIT_CONFIG.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Optional

from .errors import MalformedInput

ENV_VAR = "DIVISIKIT_CONFIG"
SECTION = "divisikit"


@dataclass(frozen=True)
class Config:
    precision: int = 128
    tol: float = 1e-9
    subset_cap: int = 24
    sat_cap: int = 24
    gadget_c: Fraction = Fraction(1, 4)
    sat_N: Optional[int] = None
    sat_M: Optional[int] = None
    sat_delta: Optional[Fraction] = None
    sat_n_d: Optional[Fraction] = None
    lift_c: int = 1000
    lift_ratio: Fraction = Fraction(1, 2)
    eps_budget: int = 50000
    seed: int = 0

    def __post_init__(self):
        for name in ("precision", "subset_cap", "sat_cap", "lift_c", "eps_budget"):
            if getattr(self, name) <= 0:
                raise MalformedInput(f"{name} must be positive")
        if self.tol <= 0 or self.gadget_c <= 0 or self.lift_ratio <= 0:
            raise MalformedInput("tolerances and constants must be positive")
        if self.seed < 0:
            raise MalformedInput("seed must be nonnegative")

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _convert(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(Config)}
    if name not in kinds:
        raise MalformedInput(f"unknown config key {name!r}")
    kind = str(kinds[name])
    raw = raw.strip().strip('"')
    try:
        if "Fraction" in kind:
            return Fraction(raw)
        if "float" in kind:
            return float(raw)
        return int(raw)
    except ValueError as exc:
        raise MalformedInput(f"bad value for {name}: {raw!r}") from exc


def parse_config(text: str) -> Config:
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep sat_N and friends case-sensitive
    if not text.lstrip().startswith("["):
        text = f"[{SECTION}]\n" + text
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise MalformedInput(f"malformed config: {exc}") from exc
    values = {}
    for section in parser.sections():
        for k, v in parser[section].items():
            values[k] = _convert(k, v)
    return Config(**values)


def load_config(path: Optional[str] = None) -> Config:
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise MalformedInput(f"cannot read config {path}: {exc}") from exc
