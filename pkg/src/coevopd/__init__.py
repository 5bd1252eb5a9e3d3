"""Coevolutionary Optional Prisoner's Dilemma on a weighted torus lattice."""

from .engine import (
    StepReport,
    accumulated_utility,
    adoption_probability,
    average_utility,
    inner_step,
    is_frozen,
    mc_step,
    run,
    update_link_weights,
    utility,
)
from .game import GameParams, Strategy, payoff
from .lattice import Lattice
from .records import Snapshot, TimeSeries
from .rng import RngStream

__all__ = [
    "GameParams", "Lattice", "RngStream", "Snapshot", "StepReport", "Strategy", "TimeSeries",
    "accumulated_utility", "adoption_probability", "average_utility", "inner_step", "is_frozen",
    "mc_step", "payoff", "run", "update_link_weights", "utility",
]
