"""Initial populations and one-off perturbations of an evolved lattice."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .game import Strategy
from .lattice import Lattice, neighbor_table
from .rng import RngStream


@dataclass(frozen=True)
class UniformThirds:
    pass


@dataclass(frozen=True)
class TwoSpecies:
    """Two-strategy population obtained by replacing the third strategy.

    With ``source`` unset, cells are drawn uniformly between ``keep`` and
    ``keep2``.  With ``source`` set, the evolved snapshot is loaded and the
    missing strategy is replaced by the one that dominates it in the
    C > A > D > C cycle, so the replacement lands inside the surviving pair.
    """

    keep: Strategy
    keep2: Strategy
    source: Optional[str] = None

    def __post_init__(self) -> None:
        if self.keep == self.keep2:
            raise ValueError("two-species init needs two different strategies")


@dataclass(frozen=True)
class FromSnapshot:
    path: str


Init = Union[UniformThirds, TwoSpecies, FromSnapshot]


@dataclass(frozen=True)
class Mutation:
    from_: Strategy
    to: Strategy
    rate: float = 1.0
    keep_count: Optional[int] = None
    keep_at: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        if self.from_ == self.to:
            raise ValueError("mutation source and target must differ")
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"mutation rate must lie in [0, 1], got {self.rate}")
        if self.keep_count is not None and self.keep_count < 0:
            raise ValueError("keep_count must be >= 0")
        if self.keep_at is not None and self.keep_count not in (None, 1):
            raise ValueError("keep_at places a single survivor (keep_count=1)")


@dataclass(frozen=True)
class ScenarioSpec:
    init: Init = UniformThirds()
    mutation: Optional[Mutation] = None
    reset_weights: bool = False


# the strategy each one loses to: C beats A, A beats D, D beats C
DOMINATOR = {Strategy.A: Strategy.C, Strategy.D: Strategy.A, Strategy.C: Strategy.D}


def init_uniform_thirds(side: int, rng: RngStream) -> Lattice:
    """Each cell independently C, D or A with equal probability; unit weights."""
    if side < 3:
        raise ValueError(f"side must be >= 3, got {side}")
    n = side * side
    strat = np.fromiter((rng.below(3) for _ in range(n)), dtype=np.int8, count=n)
    return Lattice(side, strat, np.ones(4 * n))


def init_two_species(side: int, keep: Strategy, keep2: Strategy, rng: RngStream) -> Lattice:
    n = side * side
    pair = (int(keep), int(keep2))
    strat = np.fromiter((pair[rng.below(2)] for _ in range(n)), dtype=np.int8, count=n)
    return Lattice(side, strat, np.ones(4 * n))


def replace_species(lattice: Lattice, from_: Strategy, to: Strategy) -> Lattice:
    """Turn every ``from_`` agent into ``to`` in place; weights untouched."""
    if from_ == to:
        raise ValueError("replacement source and target must differ")
    lattice.strategies[lattice.strategies == int(from_)] = int(to)
    return lattice


def mutate_species(
    lattice: Lattice,
    from_: Strategy,
    to: Strategy,
    rate: float,
    keep_count: Optional[int],
    rng: RngStream,
    keep_at: Optional[tuple[int, int]] = None,
) -> Lattice:
    """Convert ``from_`` agents into ``to`` in place.

    With ``keep_count`` set the rate is ignored and all but ``keep_count``
    agents mutate, survivors drawn uniformly.  ``keep_at`` pins the single
    survivor to a given ``(row, col)``.  Otherwise ``round(rate * count)``
    agents mutate, chosen uniformly without replacement.
    """
    if from_ == to:
        raise ValueError("mutation source and target must differ")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"mutation rate must lie in [0, 1], got {rate}")
    members = np.flatnonzero(lattice.strategies == int(from_))
    count = members.size
    if keep_at is not None:
        target = lattice.index(*keep_at)
        if lattice.strategies[target] != int(from_):
            raise ValueError(f"agent at {keep_at} is not a {from_.name}")
        if keep_count not in (None, 1):
            raise ValueError("keep_at places a single survivor (keep_count=1)")
        victims = members[members != target]
    elif keep_count is not None:
        if keep_count > count:
            raise ValueError(f"keep_count={keep_count} exceeds the {count} {from_.name} agents")
        chosen = rng.sample(count, count - keep_count)
        victims = members[np.sort(np.asarray(chosen, dtype=np.int64))]
    else:
        k = int(round(rate * count))
        victims = members[np.sort(np.asarray(rng.sample(count, k), dtype=np.int64))]
    lattice.strategies[victims] = int(to)
    return lattice


def reset_weights(lattice: Lattice) -> Lattice:
    """Every edge weight back to 1; strategies untouched."""
    lattice.weights[:] = 1.0
    return lattice


def neighborhood_census(lattice: Lattice, agent: int) -> tuple[int, int, int]:
    """``(nC, nD, nA)`` among the eight neighbours of ``agent``."""
    nbrs = lattice.neighbors(agent)
    counts = np.bincount(lattice.strategies[nbrs], minlength=3)
    return int(counts[0]), int(counts[1]), int(counts[2])


def census_after_mutation(lattice: Lattice, from_: Strategy, to: Strategy) -> np.ndarray:
    """Neighbourhood counts every agent would see once all ``from_`` became ``to``.

    Returns an ``(n, 3)`` int array.  Used to pick targeted keep-one survivors.
    """
    strat = lattice.strategies.copy()
    strat[strat == int(from_)] = int(to)
    nbr_strat = strat[neighbor_table(lattice.side)]
    return np.stack([(nbr_strat == s).sum(axis=1) for s in range(3)], axis=1)


def initial_population(spec: ScenarioSpec, side: int, rng: RngStream) -> Lattice:
    """Lattice described by ``spec.init`` alone."""
    from .io import read_snapshot, snapshot_to_lattice

    init = spec.init
    if isinstance(init, UniformThirds):
        return init_uniform_thirds(side, rng)
    if isinstance(init, TwoSpecies):
        if init.source is None:
            return init_two_species(side, init.keep, init.keep2, rng)
        lattice = snapshot_to_lattice(read_snapshot(Path(init.source)))
        missing = Strategy(({0, 1, 2} - {int(init.keep), int(init.keep2)}).pop())
        return replace_species(lattice, missing, DOMINATOR[missing])
    if isinstance(init, FromSnapshot):
        return snapshot_to_lattice(read_snapshot(Path(init.path)))
    raise TypeError(f"unknown init {init!r}")


def apply_perturbation(lattice: Lattice, spec: ScenarioSpec, rng: RngStream) -> Lattice:
    """Mutation first, then the optional weight reset."""
    if spec.mutation is not None:
        m = spec.mutation
        mutate_species(lattice, m.from_, m.to, m.rate, m.keep_count, rng, keep_at=m.keep_at)
    if spec.reset_weights:
        reset_weights(lattice)
    return lattice


def build_initial(spec: ScenarioSpec, side: int, rng: RngStream) -> Lattice:
    return apply_perturbation(initial_population(spec, side, rng), spec, rng)
