"""Runtime knobs, optionally loaded from a ``key=value`` file."""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


@dataclass
class Config:
    size_guard: int = 5_000_000  # max states of any intermediate machine
    precision_bits: int = 128  # starting precision for interval enclosures
    stabilization_cap: int = 64  # leading-zero steps allowed in linear representations
    sweep_max: int = 1_000_000  # default upper bound for numeric sweeps
    learn_depth: int = 7  # experiment length for automaton guessing

    def load(self, path: str | Path) -> "Config":
        known = {f.name: f.type for f in fields(self)}
        for raw in Path(path).read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            setattr(self, key, int(val.strip().replace("_", "")))
        return self


CONFIG = Config()
