"""Scenario records and JSON config loading."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..errors import ConfigError

ALGEBRAS = ("free", "qgauss", "qtorus")
INF = "inf"


@dataclass(frozen=True)
class RandomSource:
    seed: int
    count: int = 1
    support_size: int = 4
    max_degree: int | None = None
    min_degree: int = 0
    holomorphic: bool | None = None


@dataclass(frozen=True)
class Scenario:
    id: str
    algebra: str
    check: str
    params: Mapping[str, Any] = field(default_factory=dict)
    d: int = 1
    t_grid: tuple[float, ...] = (0.5,)
    p_list: tuple[int | str, ...] = (2,)
    literal: tuple[Mapping, ...] | None = None
    random: RandomSource | None = None
    tolerance: float | None = None
    quad_points: int | None = None
    options: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.algebra not in ALGEBRAS:
            raise ConfigError(f"scenario {self.id!r}: unknown algebra {self.algebra!r}")
        if self.d < 0:
            raise ConfigError(f"scenario {self.id!r}: d must be >= 0")
        for p in self.p_list:
            if p == INF:
                if self.algebra == "qgauss":
                    raise ConfigError(f"scenario {self.id!r}: p = inf is not supported for qgauss")
                continue
            if isinstance(p, bool) or not isinstance(p, int) or p < 2 or p % 2:
                raise ConfigError(f"scenario {self.id!r}: p entries must be even integers or 'inf', got {p!r}")
        for t in self.t_grid:
            if not (isinstance(t, (int, float)) and math.isfinite(t) and t >= 0):
                raise ConfigError(f"scenario {self.id!r}: bad time {t!r}")
        if self.literal is not None and self.random is not None:
            raise ConfigError(f"scenario {self.id!r}: give either a literal or a random source, not both")
        if self.tolerance is not None and not self.tolerance >= 0:
            raise ConfigError(f"scenario {self.id!r}: tolerance must be >= 0")


def _random_source(raw: Mapping, sid: str) -> RandomSource:
    if "seed" not in raw:
        raise ConfigError(f"scenario {sid!r}: random sources need a seed")
    try:
        return RandomSource(
            seed=int(raw["seed"]),
            count=int(raw.get("count", 1)),
            support_size=int(raw.get("support_size", 4)),
            max_degree=None if raw.get("max_degree") is None else int(raw["max_degree"]),
            min_degree=int(raw.get("min_degree", 0)),
            holomorphic=raw.get("holomorphic"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"scenario {sid!r}: bad random source: {exc}") from exc


def _p_entry(p):
    if isinstance(p, str):
        if p.lower() in ("inf", "infinity"):
            return INF
        raise ConfigError(f"bad p entry {p!r}")
    return p


def scenario_from_dict(raw: Mapping) -> Scenario:
    if not isinstance(raw, Mapping):
        raise ConfigError(f"scenario must be an object, got {type(raw).__name__}")
    for key in ("id", "algebra", "check"):
        if key not in raw:
            raise ConfigError(f"scenario is missing {key!r}: {raw}")
    sid = str(raw["id"])
    known = {"id", "algebra", "check", "params", "d", "t_grid", "p_list", "polynomial", "tolerance", "quad_points", "options"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"scenario {sid!r}: unknown fields {sorted(unknown)}")
    literal = random = None
    poly = raw.get("polynomial")
    if poly is not None:
        if "literal" in poly:
            literal = tuple(poly["literal"])
        elif "random" in poly:
            random = _random_source(poly["random"], sid)
        else:
            raise ConfigError(f"scenario {sid!r}: polynomial needs 'literal' or 'random'")
    return Scenario(
        id=sid,
        algebra=str(raw["algebra"]),
        check=str(raw["check"]),
        params=dict(raw.get("params", {})),
        d=int(raw.get("d", 1)),
        t_grid=tuple(float(t) for t in raw.get("t_grid", (0.5,))),
        p_list=tuple(_p_entry(p) for p in raw.get("p_list", (2,))),
        literal=literal,
        random=random,
        tolerance=None if raw.get("tolerance") is None else float(raw["tolerance"]),
        quad_points=None if raw.get("quad_points") is None else int(raw["quad_points"]),
        options=dict(raw.get("options", {})),
    )


def load_config(path: str | Path) -> list[Scenario]:
    """A config is a JSON list of scenarios or an object with a ``scenarios`` list."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if isinstance(raw, Mapping):
        raw = raw.get("scenarios")
    if not isinstance(raw, list):
        raise ConfigError("config must be a list of scenarios or {'scenarios': [...]}")
    scenarios = [scenario_from_dict(item) for item in raw]
    ids = [s.id for s in scenarios]
    if len(set(ids)) != len(ids):
        raise ConfigError("scenario ids must be unique")
    return scenarios
