"""Flat key = value experiment configs.

Files are plain text: one key = value per line, # starts a comment,
blank lines are ignored.  Every key is validated; unknown keys and type
errors name the offending key.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .errors import ConfigError
from .sieve import E2Params

_PAIRS = ("e2xe2", "primexe2")
_VARIANTS = ("restricted", "typical")


@dataclass
class ExperimentConfig:
    """Validated experiment parameters.

    x and h_max fix the correlation windows; pair, variant, p_low,
    p_high, weighted pick the sequences; the rest are optional knobs
    for specific subcommands.
    """

    x: int
    h_max: int
    p_low: int
    p_high: int
    pair: str = "e2xe2"
    variant: str = "restricted"
    weighted: bool = True
    q0: int | None = None
    arc_q0: int | None = None
    arc_q: int | None = None
    mc_samples: int = 100_000
    dirichlet_q: int = 12
    u: float = 10.0
    threads: int = 1
    seed: int = 0
    out_dir: str | None = None
    cache_dir: str | None = None

    def e2_params(self) -> E2Params:
        if self.variant == "restricted":
            return E2Params.restricted(self.p_low, self.p_high)
        return E2Params.typical(self.p_low, self.p_high)

    def pair_spec(self) -> str:
        if self.pair == "primexe2":
            return "primexe2"
        return f"e2xe2-{self.variant}"


_BOOL_WORDS = {"true": True, "false": False, "1": True, "0": False,
               "yes": True, "no": False}


def _convert(key: str, raw: str, target_type):
    try:
        if target_type is bool:
            word = raw.lower()
            if word not in _BOOL_WORDS:
                raise ValueError
            return _BOOL_WORDS[word]
        return target_type(raw)
    except ValueError:
        raise ConfigError(
            f"config key {key!r}: cannot parse {raw!r} as {target_type.__name__}"
        ) from None


def parse_config_text(text: str) -> dict[str, str]:
    """Split config text into a raw key -> string mapping."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


_FIELD_TYPES = {
    "x": int,
    "h_max": int,
    "p_low": int,
    "p_high": int,
    "pair": str,
    "variant": str,
    "weighted": bool,
    "q0": int,
    "arc_q0": int,
    "arc_q": int,
    "mc_samples": int,
    "dirichlet_q": int,
    "u": float,
    "threads": int,
    "seed": int,
    "out_dir": str,
    "cache_dir": str,
}

_REQUIRED = ("x", "h_max", "p_low", "p_high")


def load_config(path: str) -> ExperimentConfig:
    """Parse and validate a config file."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        raw = parse_config_text(fh.read())
    known = {f.name for f in fields(ExperimentConfig)}
    values: dict = {}
    for key, val in raw.items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        values[key] = _convert(key, val, _FIELD_TYPES[key])
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"missing required config keys: {', '.join(missing)}")
    cfg = ExperimentConfig(**values)
    validate_config(cfg)
    return cfg


def validate_config(cfg: ExperimentConfig) -> None:
    """Re-check every invariant the dataclass fields cannot express."""
    if cfg.x < 4:
        raise ConfigError(f"config key 'x': must be >= 4, got {cfg.x}")
    if not 1 <= cfg.h_max < cfg.x:
        raise ConfigError(
            f"config key 'h_max': need 1 <= h_max < x, got h_max={cfg.h_max}, x={cfg.x}"
        )
    if cfg.pair not in _PAIRS:
        raise ConfigError(f"config key 'pair': must be one of {_PAIRS}, got {cfg.pair!r}")
    if cfg.variant not in _VARIANTS:
        raise ConfigError(
            f"config key 'variant': must be one of {_VARIANTS}, got {cfg.variant!r}"
        )
    if cfg.p_low < 1 or cfg.p_high < cfg.p_low:
        raise ConfigError(
            f"config key 'p_low'/'p_high': bad interval "
            f"({cfg.p_low}, {cfg.p_high})"
        )
    if cfg.p_high**2 > cfg.x - cfg.h_max:
        raise ConfigError(
            f"config key 'p_high': p_high^2 = {cfg.p_high ** 2} exceeds the "
            f"widened window start x - h_max = {cfg.x - cfg.h_max}; the "
            f"smaller-factor interval must satisfy p_high <= sqrt(x - h_max)"
        )
    if cfg.threads < 1:
        raise ConfigError(f"config key 'threads': must be >= 1, got {cfg.threads}")
    if cfg.q0 is not None and cfg.q0 < 1:
        raise ConfigError(f"config key 'q0': must be >= 1, got {cfg.q0}")
    if cfg.mc_samples < 1:
        raise ConfigError(
            f"config key 'mc_samples': must be >= 1, got {cfg.mc_samples}"
        )
    if cfg.u <= 0:
        raise ConfigError(f"config key 'u': must be positive, got {cfg.u}")
    if cfg.dirichlet_q < 1:
        raise ConfigError(
            f"config key 'dirichlet_q': must be >= 1, got {cfg.dirichlet_q}"
        )
    if (cfg.arc_q0 is None) != (cfg.arc_q is None):
        raise ConfigError("config keys 'arc_q0' and 'arc_q' must be set together")
    if cfg.arc_q0 is not None:
        if cfg.arc_q0 < 1:
            raise ConfigError(f"config key 'arc_q0': must be >= 1, got {cfg.arc_q0}")
        if cfg.arc_q < 2 * cfg.arc_q0**2:
            raise ConfigError(
                f"config key 'arc_q': need arc_q >= 2*arc_q0^2 for disjoint "
                f"arcs, got arc_q={cfg.arc_q}, arc_q0={cfg.arc_q0}"
            )
