"""Replicate runner: seeds ``seed + i``, one CSV per replicate, one summary."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import engine
from .config import RunConfig
from .game import Strategy
from .io import SnapshotWriter, lattice_snapshot, write_snapshot, write_timeseries_csv
from .lattice import Lattice
from .records import TimeSeries
from .rng import RngStream
from .scenarios import apply_perturbation, initial_population

log = logging.getLogger(__name__)

SUMMARY_HEADER = "replicate,seed,stop_step,frac_c,frac_d,frac_a,outcome"


@dataclass(frozen=True)
class ReplicateResult:
    replicate: int
    seed: int
    stop_step: int
    final: tuple[float, float, float]
    absorbed: Optional[Strategy]

    @property
    def outcome(self) -> str:
        return self.absorbed.name if self.absorbed is not None else "coexist"

    def csv_row(self) -> str:
        fc, fd, fa = self.final
        return f"{self.replicate},{self.seed},{self.stop_step},{fc:.6f},{fd:.6f},{fa:.6f},{self.outcome}"


def simulate(config: RunConfig, seed: int, observers=()) -> tuple[Lattice, TimeSeries]:
    """One replicate: build the population, evolve, perturb, continue.

    With ``perturb_at == 0`` the perturbation is applied before step 0.
    Otherwise the unperturbed population runs ``perturb_at`` steps first and
    the series row at that step shows the post-perturbation state.
    """
    rng = RngStream(seed)
    lattice = initial_population(config.scenario, config.side, rng)
    params = config.params
    stop_when = None
    if params.delta_step == 0.0:
        stop_when = lambda step, counts: engine.is_frozen(lattice, params)  # noqa: E731
    head = None
    if config.perturb_at > 0:
        head = engine.run(lattice, params, config.perturb_at, rng, observers, config.record_every)
    apply_perturbation(lattice, config.scenario, rng)
    tail = engine.run(
        lattice, params, config.n_steps, rng, observers, config.record_every,
        stop_on_absorption=config.stop_on_absorption, stop_when=stop_when,
        start_step=config.perturb_at,
    )
    if head is not None:
        tail.steps[:0] = head.steps[:-1]
        tail.fractions[:0] = head.fractions[:-1]
    return lattice, tail


def run_replicate(config: RunConfig, index: int) -> ReplicateResult:
    seed = config.seed + index
    out = Path(config.out_dir)
    prefix = f"rep{index:02d}_"
    writer = SnapshotWriter(out, config.snapshot_steps, prefix=prefix)
    lattice, series = simulate(config, seed, observers=[writer] if config.snapshot_steps else [])
    write_timeseries_csv(series, out / f"{prefix}timeseries.csv")
    write_snapshot(lattice_snapshot(lattice, series.stop_step), out / f"{prefix}final.txt")
    log.info("replicate %d (seed %d) stopped at %d: %s", index, seed, series.stop_step, series.final())
    return ReplicateResult(index, seed, series.stop_step, series.final(), series.absorbed)


def run_replicates(config: RunConfig, workers: int = 1) -> list[ReplicateResult]:
    """Run every replicate and write ``summary.csv`` into ``config.out_dir``."""
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    indices = range(config.n_replicates)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_replicate, [config] * len(indices), indices))
    else:
        results = [run_replicate(config, i) for i in indices]
    results.sort(key=lambda r: r.replicate)
    lines = [SUMMARY_HEADER] + [r.csv_row() for r in results]
    (out / "summary.csv").write_text("\n".join(lines) + "\n", encoding="ascii")
    return results
