"""Square torus lattice with Moore neighbourhoods and shared edge weights.

Agents are indexed row-major, ``index = row * side + col``.  The eight
neighbour slots are always listed in the order N, NE, E, SE, S, SW, W, NW.

Each undirected edge is stored once, owned by the agent from which it points
E, SE, S or SW.  Edge ``4 * agent + k`` is the k-th of those four
directions, which is also the serialization order of the weight section in
snapshot files.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .game import Strategy

# (drow, dcol) for N, NE, E, SE, S, SW, W, NW
NEIGHBOR_OFFSETS: tuple[tuple[int, int], ...] = (
    (-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1),
)
# owned edge directions E, SE, S, SW as neighbour-slot indices
OWNED_SLOTS = (2, 3, 4, 5)
# slot -> slot seen from the other end (N<->S, NE<->SW, E<->W, SE<->NW)
OPPOSITE_SLOT = (4, 5, 6, 7, 0, 1, 2, 3)


@lru_cache(maxsize=32)
def neighbor_table(side: int) -> np.ndarray:
    """``(side**2, 8)`` array of neighbour indices in slot order."""
    if side < 3:
        raise ValueError(f"side must be >= 3, got {side}")
    idx = np.arange(side * side)
    row, col = idx // side, idx % side
    table = np.empty((side * side, 8), dtype=np.int64)
    for k, (dr, dc) in enumerate(NEIGHBOR_OFFSETS):
        table[:, k] = ((row + dr) % side) * side + (col + dc) % side
    table.flags.writeable = False
    return table


@lru_cache(maxsize=32)
def edge_table(side: int) -> np.ndarray:
    """``(side**2, 8)`` array giving the edge id behind each neighbour slot."""
    nbr = neighbor_table(side)
    n = side * side
    table = np.empty((n, 8), dtype=np.int64)
    owner = np.arange(n)
    for k in range(8):
        if k in OWNED_SLOTS:
            table[:, k] = 4 * owner + OWNED_SLOTS.index(k)
        else:
            other = nbr[:, k]
            table[:, k] = 4 * other + OWNED_SLOTS.index(OPPOSITE_SLOT[k])
    table.flags.writeable = False
    return table


@dataclass
class Lattice:
    """Strategies plus one weight per undirected Moore edge on a torus."""

    side: int
    strategies: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.side < 3:
            raise ValueError(f"side must be >= 3, got {self.side}")
        n = self.side * self.side
        self.strategies = np.ascontiguousarray(self.strategies, dtype=np.int8).reshape(-1)
        self.weights = np.ascontiguousarray(self.weights, dtype=np.float64).reshape(-1)
        if self.strategies.shape != (n,):
            raise ValueError(f"expected {n} strategies, got {self.strategies.size}")
        if self.weights.shape != (4 * n,):
            raise ValueError(f"expected {4 * n} weights, got {self.weights.size}")
        if n and (self.strategies.min() < 0 or self.strategies.max() > 2):
            raise ValueError("strategy codes must be 0 (C), 1 (D) or 2 (A)")

    @classmethod
    def filled(cls, side: int, strategy: Strategy = Strategy.C) -> "Lattice":
        n = side * side
        return cls(side, np.full(n, int(strategy), dtype=np.int8), np.ones(4 * n))

    @classmethod
    def from_grid(cls, rows: list[str] | list[list[Strategy]], weights=None) -> "Lattice":
        """Build from rows like ``["CDA", "AAC", ...]``; weights default to 1."""
        side = len(rows)
        strat = [int(Strategy.parse(ch)) for row in rows for ch in row]
        if len(strat) != side * side:
            raise ValueError("grid must be square")
        if weights is None:
            weights = np.ones(4 * side * side)
        return cls(side, np.array(strat, dtype=np.int8), np.asarray(weights, dtype=np.float64))

    @property
    def n_agents(self) -> int:
        return self.side * self.side

    @property
    def n_edges(self) -> int:
        return 4 * self.side * self.side

    def copy(self) -> "Lattice":
        return Lattice(self.side, self.strategies.copy(), self.weights.copy())

    def index(self, row: int, col: int) -> int:
        return (row % self.side) * self.side + col % self.side

    def coords(self, agent: int) -> tuple[int, int]:
        self._check_agent(agent)
        return divmod(agent, self.side)

    def strategy(self, agent: int) -> Strategy:
        self._check_agent(agent)
        return Strategy(int(self.strategies[agent]))

    def counts(self) -> tuple[int, int, int]:
        c = np.bincount(self.strategies, minlength=3)
        return int(c[0]), int(c[1]), int(c[2])

    def fractions(self) -> tuple[float, float, float]:
        n = self.n_agents
        c, d, a = self.counts()
        return c / n, d / n, a / n

    def grid(self) -> np.ndarray:
        """Read-only ``(side, side)`` view of the strategy codes."""
        view = self.strategies.reshape(self.side, self.side).view()
        view.flags.writeable = False
        return view

    def neighbors(self, agent: int) -> list[int]:
        self._check_agent(agent)
        return [int(v) for v in neighbor_table(self.side)[agent]]

    def edge_id(self, x: int, y: int) -> int:
        self._check_agent(x)
        self._check_agent(y)
        row = neighbor_table(self.side)[x]
        hits = np.flatnonzero(row == y)
        if hits.size == 0:
            raise ValueError(f"agents {x} and {y} are not Moore-adjacent")
        return int(edge_table(self.side)[x, hits[0]])

    def get_weight(self, x: int, y: int) -> float:
        return float(self.weights[self.edge_id(x, y)])

    def set_weight(self, x: int, y: int, w: float) -> None:
        self.weights[self.edge_id(x, y)] = w

    def edges(self) -> list[tuple[int, int]]:
        """All undirected edges as ``(owner, neighbour)`` in storage order."""
        nbr = neighbor_table(self.side)
        return [(a, int(nbr[a, s])) for a in range(self.n_agents) for s in OWNED_SLOTS]

    def _check_agent(self, agent: int) -> None:
        if not 0 <= agent < self.n_agents:
            raise IndexError(f"agent index {agent} out of range [0, {self.n_agents})")
