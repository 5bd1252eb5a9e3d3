"""Run configuration parsed from a small TOML document.

Top-level keys::

    side, n_steps, n_replicates, seed, record_every, snapshot_steps,
    early_stop_on_absorption, out_dir, b, l, delta_step, delta_max

and an optional ``[scenario]`` table::

    init = "uniform-thirds" | "two-species" | "snapshot"
    keep, keep2       strategies kept by "two-species"
    path              snapshot file ("snapshot" init, or evolved source
                      for "two-species")
    perturb_at        MC steps run before the mutation / reset is applied
    reset_weights     bool
    [scenario.mutation]
    from, to, rate, keep_count, keep_at = [row, col]

Missing keys take the published defaults (102x102 lattice, 10**6 steps,
10 replicates, b=1.9, l=0.5, delta_step=0.24, delta_max=0.8).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Optional

import tomli

from .game import GameParams, Strategy
from .scenarios import FromSnapshot, Mutation, ScenarioSpec, TwoSpecies, UniformThirds


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    side: int = 102
    n_steps: int = 1_000_000
    n_replicates: int = 10
    params: GameParams = field(default_factory=GameParams)
    scenario: ScenarioSpec = field(default_factory=ScenarioSpec)
    seed: int = 0
    record_every: int = 1
    snapshot_steps: tuple[int, ...] = ()
    early_stop_on_absorption: Optional[bool] = None
    perturb_at: int = 0
    out_dir: str = "runs"

    def __post_init__(self) -> None:
        if self.side < 3:
            raise ConfigError(f"side must be >= 3, got {self.side}")
        if self.n_steps < 0:
            raise ConfigError(f"n_steps must be >= 0, got {self.n_steps}")
        if self.n_replicates < 1:
            raise ConfigError(f"n_replicates must be >= 1, got {self.n_replicates}")
        if self.record_every < 1:
            raise ConfigError(f"record_every must be >= 1, got {self.record_every}")
        if self.perturb_at < 0:
            raise ConfigError(f"perturb_at must be >= 0, got {self.perturb_at}")
        if any(s < 0 for s in self.snapshot_steps):
            raise ConfigError("snapshot_steps must be non-negative")

    @property
    def stop_on_absorption(self) -> bool:
        """Explicit setting, else on for two-species runs and full replacements."""
        if self.early_stop_on_absorption is not None:
            return self.early_stop_on_absorption
        scen = self.scenario
        if isinstance(scen.init, TwoSpecies):
            return True
        m = scen.mutation
        return m is not None and m.keep_count is None and m.keep_at is None and m.rate == 1.0

    def with_overrides(self, **changes: Any) -> "RunConfig":
        return replace(self, **changes)


_TOP_KEYS = {
    "side", "n_steps", "n_replicates", "seed", "record_every", "snapshot_steps",
    "early_stop_on_absorption", "out_dir", "b", "l", "delta_step", "delta_max", "scenario",
}
_SCENARIO_KEYS = {"init", "keep", "keep2", "path", "perturb_at", "reset_weights", "mutation"}
_MUTATION_KEYS = {"from", "to", "rate", "keep_count", "keep_at"}


def _typed(table: dict, key: str, kind, default):
    if key not in table:
        return default
    value = table[key]
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ConfigError(f"{key}: expected {kind.__name__}, got {value!r}")
    return value


def _strategy(table: dict, key: str) -> Strategy:
    if key not in table:
        raise ConfigError(f"missing scenario key {key!r}")
    try:
        return Strategy.parse(table[key])
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def _unknown(table: dict, allowed: set, where: str) -> None:
    extra = sorted(set(table) - allowed)
    if extra:
        raise ConfigError(f"unknown {where} key(s): {', '.join(extra)}")


def _parse_scenario(table: dict) -> tuple[ScenarioSpec, int]:
    _unknown(table, _SCENARIO_KEYS, "scenario")
    kind = _typed(table, "init", str, "uniform-thirds")
    if kind == "uniform-thirds":
        init = UniformThirds()
    elif kind == "two-species":
        try:
            init = TwoSpecies(_strategy(table, "keep"), _strategy(table, "keep2"), table.get("path"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    elif kind == "snapshot":
        if "path" not in table:
            raise ConfigError("snapshot init needs a 'path'")
        init = FromSnapshot(_typed(table, "path", str, None))
    else:
        raise ConfigError(f"unknown init {kind!r}")

    mutation = None
    if "mutation" in table:
        mt = table["mutation"]
        if not isinstance(mt, dict):
            raise ConfigError("scenario.mutation must be a table")
        _unknown(mt, _MUTATION_KEYS, "mutation")
        keep_at = mt.get("keep_at")
        if keep_at is not None:
            if not (isinstance(keep_at, list) and len(keep_at) == 2 and all(isinstance(v, int) for v in keep_at)):
                raise ConfigError("keep_at must be [row, col]")
            keep_at = (keep_at[0], keep_at[1])
        try:
            mutation = Mutation(
                _strategy(mt, "from"),
                _strategy(mt, "to"),
                rate=_typed(mt, "rate", float, 1.0),
                keep_count=_typed(mt, "keep_count", int, None),
                keep_at=keep_at,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    spec = ScenarioSpec(init, mutation, _typed(table, "reset_weights", bool, False))
    return spec, _typed(table, "perturb_at", int, 0)


def parse_config(text: str) -> RunConfig:
    """Validate a TOML document into a :class:`RunConfig`."""
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    _unknown(doc, _TOP_KEYS, "config")
    base = RunConfig()
    try:
        params = GameParams(
            b=_typed(doc, "b", float, base.params.b),
            l=_typed(doc, "l", float, base.params.l),
            delta_step=_typed(doc, "delta_step", float, base.params.delta_step),
            delta_max=_typed(doc, "delta_max", float, base.params.delta_max),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None
    scenario, perturb_at = ScenarioSpec(), 0
    if "scenario" in doc:
        if not isinstance(doc["scenario"], dict):
            raise ConfigError("scenario must be a table")
        scenario, perturb_at = _parse_scenario(doc["scenario"])
    snaps = _typed(doc, "snapshot_steps", list, [])
    if not all(isinstance(s, int) and not isinstance(s, bool) for s in snaps):
        raise ConfigError("snapshot_steps must be a list of integers")
    return RunConfig(
        side=_typed(doc, "side", int, base.side),
        n_steps=_typed(doc, "n_steps", int, base.n_steps),
        n_replicates=_typed(doc, "n_replicates", int, base.n_replicates),
        params=params,
        scenario=scenario,
        seed=_typed(doc, "seed", int, base.seed),
        record_every=_typed(doc, "record_every", int, base.record_every),
        snapshot_steps=tuple(snaps),
        early_stop_on_absorption=_typed(doc, "early_stop_on_absorption", bool, None),
        perturb_at=perturb_at,
        out_dir=_typed(doc, "out_dir", str, base.out_dir),
    )
