"""Enumeration budgets.

Every exhaustive routine in the package is bounded by one of these caps.
Defaults can be overridden per call, or globally through the
``QUADFACT_BUDGET`` environment variable (``key=value`` pairs separated by
commas, e.g. ``QUADFACT_BUDGET="max_enum_field=32,max_wild_candidates=5000"``).
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass

ENV_VAR = "QUADFACT_BUDGET"


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured cap."""


@dataclass(frozen=True)
class Config:
    # largest field order p^k that may be constructed at all
    max_field_size: int = 2**16
    # largest field order for the degree-<=2 factor oracle
    max_enum_field: int = 16
    # cap on monic zero-shifted candidates tried for a wild right component
    max_wild_candidates: int = 4096
    # cap on (f, g) pairs per exhaustive agreement run
    max_pairs: int = 200_000

    def replace(self, **changes) -> "Config":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_mapping(cls, data: dict) -> "Config":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown budget keys: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in data.items()})


def _parse_env(text: str) -> dict:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"malformed {ENV_VAR} entry: {item!r}")
        out[key.strip()] = value.strip()
    return out


def load_config(path: str | None = None, **overrides) -> Config:
    """Defaults, then the optional JSON config file, then the environment, then overrides."""
    data: dict = {}
    if path:
        with open(path) as fh:
            data.update(json.load(fh))
    env = os.environ.get(ENV_VAR)
    if env:
        data.update(_parse_env(env))
    data.update({k: v for k, v in overrides.items() if v is not None})
    return Config.from_mapping(data)


DEFAULT = Config()
