"""Optional Prisoner's Dilemma: strategies, parameters and the pairwise payoff.

Payoffs use the usual rescaling R=1, P=S=0, T=b, L=l.  Any interaction that
involves an abstainer pays both sides the loner's payoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class Strategy(IntEnum):
    C = 0  # cooperator
    D = 1  # defector
    A = 2  # abstainer

    @property
    def char(self) -> str:
        return self.name

    @classmethod
    def parse(cls, value: "str | int | Strategy") -> "Strategy":
        if isinstance(value, Strategy):
            return value
        if isinstance(value, str):
            key = value.strip().upper()
            aliases = {"COOPERATOR": "C", "DEFECTOR": "D", "ABSTAINER": "A"}
            key = aliases.get(key, key)
            try:
                return cls[key]
            except KeyError:
                raise ValueError(f"unknown strategy {value!r}") from None
        return cls(int(value))


@dataclass(frozen=True)
class GameParams:
    """Payoff and coevolution constants.

    ``b`` is the temptation to defect, ``l`` the loner's payoff,
    ``delta_step`` the per-update weight increment and ``delta_max`` the
    weight amplitude (weights live in ``[1 - delta_max, 1 + delta_max]``).
    """

    b: float = 1.9
    l: float = 0.5
    delta_step: float = 0.24
    delta_max: float = 0.8

    def __post_init__(self) -> None:
        if not 1.0 < self.b < 2.0:
            raise ValueError(f"b must lie in (1, 2), got {self.b}")
        if not 0.0 < self.l < 1.0:
            raise ValueError(f"l must lie in (0, 1), got {self.l}")
        if not 0.0 <= self.delta_max <= 1.0:
            raise ValueError(f"delta_max must lie in [0, 1], got {self.delta_max}")
        if not 0.0 <= self.delta_step <= self.delta_max:
            raise ValueError(
                f"delta_step must lie in [0, delta_max={self.delta_max}], got {self.delta_step}"
            )

    @property
    def w_min(self) -> float:
        return 1.0 - self.delta_max

    @property
    def w_max(self) -> float:
        return 1.0 + self.delta_max

    def payoff_matrix(self) -> np.ndarray:
        """3x3 row-player payoffs indexed by ``[Strategy, Strategy]``."""
        return np.array([[payoff(Strategy(i), Strategy(j), self) for j in range(3)] for i in range(3)])


def payoff(s_x: Strategy, s_y: Strategy, params: GameParams) -> float:
    """Payoff earned by ``s_x`` when playing against ``s_y``."""
    if s_x == Strategy.A or s_y == Strategy.A:
        return params.l
    if s_x == Strategy.C:
        return 1.0 if s_y == Strategy.C else 0.0
    # defector
    return params.b if s_y == Strategy.C else 0.0
