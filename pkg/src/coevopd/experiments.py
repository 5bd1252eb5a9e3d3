"""Experiment procedures shared by the acceptance suite and ``scripts/``.

All runs use the 102x102 lattice unless told otherwise.  A run "recovers"
when every strategy fraction reaches ``0.33 +/- 0.10`` at the same step;
once a strategy is extinct it cannot come back (there is no in-run
mutation), so such runs stop early as failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import engine
from .game import GameParams, Strategy
from .lattice import Lattice
from .records import TimeSeries
from .rng import RngStream
from .scenarios import (
    DOMINATOR,
    census_after_mutation,
    init_uniform_thirds,
    mutate_species,
    replace_species,
    reset_weights,
)

PAPER_PARAMS = GameParams(b=1.9, l=0.5, delta_step=0.24, delta_max=0.8)
BAND_CENTRE = 0.33
BAND_HALF_WIDTH = 0.10


def in_band(fracs, centre: float = BAND_CENTRE, half_width: float = BAND_HALF_WIDTH) -> bool:
    return all(abs(f - centre) <= half_width for f in fracs)


@dataclass
class Evolved:
    seed: int
    lattice: Lattice
    series: TimeSeries


def evolve(seed: int, n_steps: int = 10_000, side: int = 102, params: GameParams = PAPER_PARAMS) -> Evolved:
    """Uniform-thirds start, every step recorded."""
    rng = RngStream(seed)
    lattice = init_uniform_thirds(side, rng)
    series = engine.run(lattice, params, n_steps, rng)
    return Evolved(seed, lattice, series)


def band_held(series: TimeSeries, start: int, stop: int) -> bool:
    """Every recorded step in ``[start, stop]`` lies inside the band."""
    rows = [f for s, f in zip(series.steps, series.fractions) if start <= s <= stop]
    return bool(rows) and all(in_band(f) for f in rows)


# -- two species -------------------------------------------------------------

def two_species_outcome(
    evolved: Lattice, pair: tuple[Strategy, Strategy], seed: int, max_steps: int = 100_000,
    params: GameParams = PAPER_PARAMS,
) -> TimeSeries:
    """Replace the missing strategy by the one that beats it and run to absorption."""
    lattice = evolved.copy()
    missing = Strategy(({0, 1, 2} - {int(pair[0]), int(pair[1])}).pop())
    replace_species(lattice, missing, DOMINATOR[missing])
    return engine.run(lattice, params, max_steps, RngStream(seed), record_every=100,
                      stop_on_absorption=True)


# -- recovery after mutation -------------------------------------------------

@dataclass(frozen=True)
class RecoveryResult:
    recovered: bool
    stop_step: int
    final: tuple[float, float, float]


def _recovery_run(lattice: Lattice, rng: RngStream, horizon: int, params: GameParams) -> RecoveryResult:
    def stop(step, counts):
        return min(counts) == 0 or in_band([c / lattice.n_agents for c in counts])

    series = engine.run(lattice, params, horizon, rng, record_every=max(horizon, 1), stop_when=stop)
    final = series.final()
    return RecoveryResult(min(final) > 0 and in_band(final), series.stop_step, final)


def mutation_recovery(
    evolved: Lattice, from_: Strategy, to: Strategy, seed: int, rate: float = 0.99,
    horizon: int = 5000, reset: bool = False, params: GameParams = PAPER_PARAMS,
) -> RecoveryResult:
    """Mutate ``rate`` of ``from_`` into ``to`` (optionally resetting weights) and watch."""
    lattice = evolved.copy()
    rng = RngStream(seed)
    mutate_species(lattice, from_, to, rate, None, rng)
    if reset:
        reset_weights(lattice)
    return _recovery_run(lattice, rng, horizon, params)


def pick_survivors(
    evolved: Lattice, from_: Strategy, to: Strategy, census_of: Strategy,
    low: int, high: int, k: int, rng: RngStream,
) -> list[int]:
    """Up to ``k`` ``from_`` agents whose post-mutation count of ``census_of`` is in [low, high]."""
    census = census_after_mutation(evolved, from_, to)
    pool = np.flatnonzero(
        (evolved.strategies == int(from_))
        & (census[:, int(census_of)] >= low)
        & (census[:, int(census_of)] <= high)
    )
    if pool.size == 0:
        return []
    chosen = rng.sample(int(pool.size), min(k, int(pool.size)))
    return [int(pool[i]) for i in chosen]


def keep_one_recovery(
    evolved: Lattice, from_: Strategy, to: Strategy, survivor: int, seed: int,
    horizon: int = 5000, reset: bool = False, params: GameParams = PAPER_PARAMS,
) -> RecoveryResult:
    """All ``from_`` agents but ``survivor`` become ``to``; does coexistence return?"""
    lattice = evolved.copy()
    mutate_species(lattice, from_, to, 1.0, 1, RngStream(seed), keep_at=lattice.coords(survivor))
    if reset:
        reset_weights(lattice)
    return _recovery_run(lattice, RngStream(seed), horizon, params)


# -- static network ----------------------------------------------------------

@dataclass(frozen=True)
class StaticResult:
    absorbed: Optional[Strategy]
    frozen: bool
    stop_step: int
    final: tuple[float, float, float]


def static_network_run(b: float, seed: int, max_steps: int, l: float = 0.5, side: int = 102,
                       stop_on_extinction: bool = False) -> StaticResult:
    """Unweighted dynamics (delta_step = delta_max = 0) from uniform thirds.

    Stops at absorption, at a frozen state, or (optionally) as soon as one
    strategy dies out.
    """
    params = GameParams(b=b, l=l, delta_step=0.0, delta_max=0.0)
    rng = RngStream(seed)
    lattice = init_uniform_thirds(side, rng)
    frozen = False

    def stop(step, counts):
        nonlocal frozen
        if stop_on_extinction and min(counts) == 0:
            return True
        # the full scan is cheap relative to a step, but only needed now and then
        if step % 10 == 0 and engine.is_frozen(lattice, params):
            frozen = True
            return True
        return False

    series = engine.run(lattice, params, max_steps, rng, record_every=1000,
                        stop_on_absorption=True, stop_when=stop)
    return StaticResult(series.absorbed, frozen, series.stop_step, series.final())
