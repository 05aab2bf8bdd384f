"""Run configuration shared by the CLI and the scripts."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Dict, Mapping, Optional

from .algebra import as_fraction, fraction_str
from .families import Family, FamilyError, Params, get_family, resolve_params

NMAX_LIMIT = 12
FORMATS = ("json", "markdown")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    family: str = "ball"
    params: Dict[str, str] = field(default_factory=dict)
    nmax: int = 4
    precision: int = 34
    tolerance: float = 1e-10
    out: Optional[str] = None
    format: str = "json"
    pair: Optional[str] = None

    def validate(self) -> "RunConfig":
        if not 0 <= self.nmax <= NMAX_LIMIT:
            raise ConfigError(f"nmax must be in [0, {NMAX_LIMIT}] (got {self.nmax})")
        if self.precision < 15:
            raise ConfigError(f"precision must be >= 15 digits (got {self.precision})")
        if not self.tolerance > 0:
            raise ConfigError("tolerance must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        try:
            self.resolved()
        except FamilyError as e:
            raise ConfigError(str(e)) from None
        return self

    @property
    def family_obj(self) -> Family:
        return get_family(self.family)

    def resolved(self) -> Params:
        return resolve_params(self.family_obj, {k: _rational(k, v) for k, v in self.params.items()})

    def echo(self) -> dict:
        d = asdict(self)
        d["params"] = {k: fraction_str(v) for k, v in self.resolved().items()}
        d.pop("out")
        return d

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
        return cls.from_mapping(data)

    @classmethod
    def from_mapping(cls, data: Mapping) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
        d = dict(data)
        if "params" in d:
            d["params"] = {k: str(v) for k, v in d["params"].items()}
        return cls(**d)


def _rational(name: str, v) -> Fraction:
    try:
        return as_fraction(v)
    except (ValueError, ZeroDivisionError, TypeError):
        raise FamilyError(f"parameter {name} = {v!r} is not an exact rational p/q") from None
