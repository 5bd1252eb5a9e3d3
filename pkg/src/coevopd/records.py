"""Plain result containers: strategy-fraction time series and grid snapshots."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .game import Strategy


@dataclass
class TimeSeries:
    """Rows of ``(step, frac_c, frac_d, frac_a)``.

    Built from integer counts when produced by a run, so each row sums to one
    up to a single rounding of each fraction.
    """

    n_agents: int = 0
    steps: list[int] = field(default_factory=list)
    fractions: list[tuple[float, float, float]] = field(default_factory=list)
    stop_step: Optional[int] = None
    absorbed: Optional[Strategy] = None

    def append(self, step: int, counts) -> None:
        n = self.n_agents
        self.steps.append(int(step))
        self.fractions.append((counts[0] / n, counts[1] / n, counts[2] / n))

    def add_row(self, step: int, fc: float, fd: float, fa: float) -> None:
        self.steps.append(int(step))
        self.fractions.append((float(fc), float(fd), float(fa)))

    def __len__(self) -> int:
        return len(self.steps)

    def as_array(self) -> np.ndarray:
        """``(rows, 4)`` float array with the step in column 0."""
        if not self.steps:
            return np.empty((0, 4))
        return np.column_stack([np.asarray(self.steps, dtype=float), np.asarray(self.fractions)])

    def final(self) -> tuple[float, float, float]:
        return self.fractions[-1]


@dataclass
class Snapshot:
    side: int
    step: int
    grid: np.ndarray
    weights: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        self.grid = np.asarray(self.grid, dtype=np.int8).reshape(-1)
        if self.grid.size != self.side * self.side:
            raise ValueError(f"grid has {self.grid.size} cells, expected {self.side ** 2}")
        if self.weights is not None:
            self.weights = np.asarray(self.weights, dtype=np.float64).reshape(-1)
            if self.weights.size != 4 * self.side * self.side:
                raise ValueError(
                    f"weight list has {self.weights.size} entries, expected {4 * self.side ** 2}"
                )
