"""Run configuration: a flat ``key = value`` file plus environment overrides.

Keys::

    seed = 0
    dimension_bound = 6
    tolerance.<name> = <positive float>     # e.g. tolerance.holonomy = 1e-6
    budget.<name> = <positive int>          # e.g. budget.kan = 64
    input = path
    output = path

Any key can be overridden by an environment variable ``KANFUK_<KEY>``, with
dots written as double underscores (``KANFUK_TOLERANCE__HOLONOMY=1e-7``).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

ENV_PREFIX = "KANFUK_"

DEFAULT_TOLERANCES = {
    "holonomy": 1e-6,
    "unit": 1e-12,
    "closure": 1e-9,
    "lplus_scale": 1.0,
}
DEFAULT_BUDGETS = {
    "kan": 64,
    "kan_check": 200_000,
    "nerve": 200_000,
    "homotopy": 100_000,
    "descent": 500,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    dimension_bound: int = 6
    budgets: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_BUDGETS))
    input: Path | None = None
    output: Path | None = None

    def __post_init__(self):
        for k, v in self.tolerances.items():
            if not v > 0:
                raise ConfigError(f"tolerance {k} must be positive, got {v}")
        for k, v in self.budgets.items():
            if not v > 0:
                raise ConfigError(f"budget {k} must be positive, got {v}")
        if self.dimension_bound <= 0:
            raise ConfigError("dimension_bound must be positive")

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def budget(self, name: str) -> int:
        return self.budgets[name]


def _apply(cfg: RunConfig, key: str, value: str) -> RunConfig:
    key = key.strip().lower()
    value = value.strip()
    try:
        if key == "seed":
            return replace(cfg, seed=int(value))
        if key == "dimension_bound":
            return replace(cfg, dimension_bound=int(value))
        if key in ("input", "output"):
            return replace(cfg, **{key: Path(value)})
        if key.startswith("tolerance."):
            return replace(cfg, tolerances={**cfg.tolerances, key[10:]: float(value)})
        if key.startswith("budget."):
            return replace(cfg, budgets={**cfg.budgets, key[7:]: int(value)})
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"bad value for {key}: {value!r}") from None
    raise ConfigError(f"unknown config key {key!r}")


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    cfg = base or RunConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        k, v = line.split("=", 1)
        cfg = _apply(cfg, k, v)
    return cfg


def env_overrides(cfg: RunConfig, env: Mapping[str, str] | None = None) -> RunConfig:
    env = os.environ if env is None else env
    for name in sorted(env):
        if name.startswith(ENV_PREFIX) and name != ENV_PREFIX + "CONFIG":
            cfg = _apply(cfg, name[len(ENV_PREFIX):].replace("__", "."), env[name])
    return cfg


def load_config(path: str | Path | None = None, env: Mapping[str, str] | None = None
                ) -> RunConfig:
    """Defaults, then the file (``path`` or ``$KANFUK_CONFIG``), then the environment."""
    env = os.environ if env is None else env
    path = path or env.get(ENV_PREFIX + "CONFIG")
    cfg = RunConfig()
    if path:
        cfg = parse_config(Path(path).read_text(), cfg)
    return env_overrides(cfg, env)


def dumps_config(cfg: RunConfig) -> str:
    lines = [f"seed = {cfg.seed}", f"dimension_bound = {cfg.dimension_bound}"]
    lines += [f"tolerance.{k} = {v!r}" for k, v in sorted(cfg.tolerances.items())]
    lines += [f"budget.{k} = {v}" for k, v in sorted(cfg.budgets.items())]
    if cfg.input is not None:
        lines.append(f"input = {cfg.input}")
    if cfg.output is not None:
        lines.append(f"output = {cfg.output}")
    return "\n".join(lines) + "\n"
