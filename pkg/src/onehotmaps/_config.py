"""JSON configuration for contexts, comparators, cost weights and experiments."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from .exceptions import ConfigError
from .models import ArithmeticProfile, CostWeights, EqConfig
from .simd import HeContext

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json")


def parse_profile(text: str) -> ArithmeticProfile:
    """Parse ``exact``, ``fixed:<frac_bits>:<int_bits>`` or ``noisy:<sigma>``.

    >>> parse_profile("fixed:42:16").label
    'fixed:42:16'
    >>> parse_profile("noisy:1e-6").noise_sigma
    1e-06
    """
    mode, *params = text.strip().split(":")
    try:
        if mode == "exact" and not params:
            return ArithmeticProfile.exact()
        if mode == "fixed" and len(params) == 2:
            return ArithmeticProfile.fixed_point(int(params[0]), int(params[1]))
        if mode == "noisy" and len(params) == 1:
            return ArithmeticProfile.noisy(float(params[0]))
    except ValueError as exc:
        raise ConfigError(f"Invalid profile {text!r}: {exc}") from exc
    raise ConfigError(f"Invalid profile {text!r}; expected exact, fixed:<f>:<i> or noisy:<sigma>")


@dataclass(frozen=True)
class ContextSettings:
    """Context parameters; a ``None`` profile means exact arithmetic, or the experiment default."""

    slot_count: int = 2**15
    profile: ArithmeticProfile | None = None
    depth_budget: int | None = None
    auto_bootstrap: bool = False
    seed: int = 0

    def make_context(self, profile: ArithmeticProfile | None = None) -> HeContext:
        """A fresh context; ``profile`` overrides the configured one."""
        return HeContext(
            self.slot_count,
            profile or self.profile or ArithmeticProfile.exact(),
            depth_budget=self.depth_budget,
            auto_bootstrap=self.auto_bootstrap,
            seed=self.seed,
        )


@dataclass(frozen=True)
class BenchSettings:
    """Experiment defaults.

    ``n_values`` empty means each experiment's own sweep. ``batch_slots`` is the
    slot count of the per-cell contexts: every slot carries one sample.
    """

    n_values: tuple[int, ...] = ()
    shape: str = "[n/1,m/s]"
    format: str = "csv"
    max_concurrency: int = 4
    batch_slots: int = 64

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.n_values):
            raise ConfigError(f"n values must be positive, got {list(self.n_values)}")
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {OUTPUT_FORMATS}, got {self.format!r}")
        if self.max_concurrency < 1:
            raise ConfigError("max_concurrency must be at least 1")
        if self.batch_slots < 1 or self.batch_slots & (self.batch_slots - 1):
            raise ConfigError(f"batch_slots must be a power of two, got {self.batch_slots}")


@dataclass(frozen=True)
class Settings:
    context: ContextSettings = field(default_factory=ContextSettings)
    eq: EqConfig = field(default_factory=EqConfig)
    zero_test_iters: int | None = None
    cost_weights: CostWeights = field(default_factory=CostWeights)
    bench: BenchSettings = field(default_factory=BenchSettings)

    def with_overrides(self, **changes: Any) -> Settings:
        """Apply CLI overrides; ``None`` values leave the setting untouched."""
        context = self.context
        if changes.get("profile") is not None:
            context = replace(context, profile=changes["profile"])
        if changes.get("slot_count") is not None:
            context = replace(context, slot_count=changes["slot_count"])
        bench_changes = {
            key: changes[key]
            for key in ("n_values", "shape", "format")
            if changes.get(key) is not None
        }
        bench = replace(self.bench, **bench_changes)
        return replace(self, context=context, bench=bench)


def _section(data: dict[str, Any], name: str, allowed: set[str]) -> dict[str, Any]:
    section = data.get(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f"Section {name!r} must be an object")
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"Unknown keys in {name!r}: {sorted(unknown)}")
    return section


def settings_from_dict(data: dict[str, Any]) -> Settings:
    """Build settings from a parsed JSON document; missing keys take their defaults."""
    if not isinstance(data, dict):
        raise ConfigError("Configuration must be a JSON object")
    unknown = set(data) - {"context", "eq", "cost_weights", "bench"}
    if unknown:
        raise ConfigError(f"Unknown configuration sections: {sorted(unknown)}")

    context_raw = _section(data, "context", {f.name for f in fields(ContextSettings)})
    eq_raw = _section(data, "eq", {f.name for f in fields(EqConfig)} | {"zero_test_iters"})
    weights_raw = _section(data, "cost_weights", {f.name for f in fields(CostWeights)})
    bench_raw = _section(data, "bench", {f.name for f in fields(BenchSettings)})

    try:
        if "profile" in context_raw:
            context_raw = {**context_raw, "profile": parse_profile(context_raw["profile"])}
        if "n_values" in bench_raw:
            bench_raw = {**bench_raw, "n_values": tuple(int(n) for n in bench_raw["n_values"])}
        eq_raw = dict(eq_raw)
        zero_test_iters = eq_raw.pop("zero_test_iters", None)
        return Settings(
            context=ContextSettings(**context_raw),
            eq=EqConfig(**eq_raw),
            zero_test_iters=zero_test_iters,
            cost_weights=CostWeights(**weights_raw),
            bench=BenchSettings(**bench_raw),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid configuration: {exc}") from exc


def load_settings(path: str | Path | None = None) -> Settings:
    """Read settings from a JSON file, or the defaults when ``path`` is None."""
    if path is None:
        return Settings()
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"Configuration file {path} does not exist") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    logger.debug("Loaded configuration from %s", path)
    return settings_from_dict(data)
