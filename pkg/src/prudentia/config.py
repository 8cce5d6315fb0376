"""Run configuration: command-line flags override the file named by PRUDENTIA_CONFIG, which overrides defaults."""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from typing import Any, Mapping

from .core import FREE_CASE

ENV_VAR = "PRUDENTIA_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    max_entry: int = 3
    max_denominator: int = 4
    n_random: int = 200
    max_dim: int = 8
    max_hyperplanes: int = 12
    output: str = "json"
    free_case: str = FREE_CASE

    def __post_init__(self):
        for name in ("max_entry", "max_denominator", "max_dim", "max_hyperplanes"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.n_random < 0:
            raise ValueError("n_random must be nonnegative")
        if self.output not in ("json", "text"):
            raise ValueError("output must be 'json' or 'text'")


def load_config(overrides: Mapping[str, Any] | None = None, environ: Mapping[str, str] | None = None) -> RunConfig:
    environ = os.environ if environ is None else environ
    values: dict[str, Any] = {}
    path = environ.get(ENV_VAR)
    if path:
        with open(path, encoding="utf-8") as fh:
            values.update(json.load(fh))
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = v
    return RunConfig(**values)
