"""Coevolutionary Monte Carlo dynamics.

One inner step picks an agent ``x`` at random, nudges each of its eight edge
weights up or down by ``delta_step`` depending on whether that edge's utility
beats ``x``'s mean utility, clamps the weights to ``[1 - delta_max,
1 + delta_max]``, and then lets ``x`` imitate a random neighbour ``y`` with
probability ``min(1, (U_y - U_x) / (8 b))`` when ``U_y > U_x``.  A Monte Carlo
step is ``side**2`` inner steps with agents drawn with replacement.

Per inner step the stream yields: agent word, neighbour-slot word and, only
when ``U_y > U_x``, the adoption coin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from numba import njit

from .game import GameParams, Strategy, payoff
from .lattice import Lattice, edge_table, neighbor_table
from .records import TimeSeries
from .rng import RngStream, word_below, word_slot, word_unit

Observer = Callable[[int, tuple, Lattice], None]


@dataclass(frozen=True)
class StepReport:
    step_index: int
    counts: tuple[int, int, int]
    absorbed: Optional[Strategy] = None


# -- per-agent quantities ---------------------------------------------------

def utility(lattice: Lattice, params: GameParams, x: int, y: int) -> float:
    """Weighted payoff ``w_xy * P(s_x, s_y)``."""
    w = lattice.get_weight(x, y)
    return w * payoff(lattice.strategy(x), lattice.strategy(y), params)


def _utilities(lattice: Lattice, params: GameParams, x: int) -> list[float]:
    return [utility(lattice, params, x, y) for y in lattice.neighbors(x)]


def average_utility(lattice: Lattice, params: GameParams, x: int) -> float:
    total = 0.0
    for u in _utilities(lattice, params, x):
        total += u
    return total / 8.0


def accumulated_utility(lattice: Lattice, params: GameParams, x: int) -> float:
    total = 0.0
    for u in _utilities(lattice, params, x):
        total += u
    return total


def update_link_weights(lattice: Lattice, params: GameParams, x: int, rng: RngStream | None = None) -> None:
    """Apply the weight rule to the eight edges of ``x``.

    All comparisons use utilities and the mean from before any edge moves.
    ``rng`` is accepted for interface symmetry; the rule is deterministic.
    """
    nbrs = lattice.neighbors(x)
    us = _utilities(lattice, params, x)
    total = 0.0
    for u in us:
        total += u
    mean = total / 8.0
    lo, hi = params.w_min, params.w_max
    for y, u in zip(nbrs, us):
        w = lattice.get_weight(x, y)
        if u > mean:
            w = w + params.delta_step
        elif u < mean:
            w = w - params.delta_step
        lattice.set_weight(x, y, min(hi, max(lo, w)))


def adoption_probability(u_x: float, u_y: float, params: GameParams) -> float:
    """Chance that ``x`` copies ``y``: ``(U_y - U_x) / (8 b)`` clipped to [0, 1]."""
    if not u_y > u_x:
        return 0.0
    p = (u_y - u_x) / (8.0 * params.b)
    return 1.0 if p > 1.0 else p


# -- compiled kernel --------------------------------------------------------

@njit(cache=True)
def _run_inner_steps(strat, weights, nbr, edges, pay, dstep, wmin, wmax, denom,
                     words, pos, n_inner, counts):
    n = strat.shape[0]
    u = np.empty(8)
    for _ in range(n_inner):
        x = word_below(words[pos], n)
        pos += 1
        sx = strat[x]

        total = 0.0
        for k in range(8):
            u[k] = weights[edges[x, k]] * pay[sx, strat[nbr[x, k]]]
            total += u[k]
        mean = total / 8.0
        for k in range(8):
            e = edges[x, k]
            w = weights[e]
            if u[k] > mean:
                w = w + dstep
            elif u[k] < mean:
                w = w - dstep
            if w > wmax:
                w = wmax
            if w < wmin:
                w = wmin
            weights[e] = w

        ux = 0.0
        for k in range(8):
            ux += weights[edges[x, k]] * pay[sx, strat[nbr[x, k]]]

        y = nbr[x, word_slot(words[pos])]
        pos += 1
        sy = strat[y]
        uy = 0.0
        for k in range(8):
            uy += weights[edges[y, k]] * pay[sy, strat[nbr[y, k]]]

        if uy > ux:
            coin = word_unit(words[pos])
            pos += 1
            p = (uy - ux) / denom
            if p > 1.0:
                p = 1.0
            if coin < p and sy != sx:
                strat[x] = sy
                counts[sx] -= 1
                counts[sy] += 1
    return pos


class _Kernel:
    """Bound arrays for repeated kernel calls on one lattice."""

    def __init__(self, lattice: Lattice, params: GameParams):
        self.lattice = lattice
        self.nbr = np.ascontiguousarray(neighbor_table(lattice.side))
        self.edges = np.ascontiguousarray(edge_table(lattice.side))
        self.pay = np.ascontiguousarray(params.payoff_matrix(), dtype=np.float64)
        self.params = params
        self.counts = np.array(lattice.counts(), dtype=np.int64)

    def inner_steps(self, rng: RngStream, n_inner: int) -> None:
        words, pos = rng.reserve(3 * n_inner)
        p = self.params
        pos = _run_inner_steps(
            self.lattice.strategies, self.lattice.weights, self.nbr, self.edges, self.pay,
            p.delta_step, p.w_min, p.w_max, 8.0 * p.b, words, pos, n_inner, self.counts,
        )
        rng.commit(int(pos))


def _absorbed(counts, n: int) -> Optional[Strategy]:
    for s in Strategy:
        if counts[s] == n:
            return s
    return None


def inner_step(lattice: Lattice, params: GameParams, rng: RngStream) -> None:
    """One agent update (weights, then imitation), applied in place."""
    _Kernel(lattice, params).inner_steps(rng, 1)


def mc_step(lattice: Lattice, params: GameParams, rng: RngStream, step_index: int = 1) -> StepReport:
    """``side**2`` inner steps followed by a census."""
    kernel = _Kernel(lattice, params)
    kernel.inner_steps(rng, lattice.n_agents)
    counts = tuple(int(c) for c in kernel.counts)
    return StepReport(step_index, counts, _absorbed(counts, lattice.n_agents))


@njit(cache=True)
def _has_move(strat, weights, nbr, edges, pay):
    n = strat.shape[0]
    totals = np.zeros(n)
    for x in range(n):
        sx = strat[x]
        for k in range(8):
            totals[x] += weights[edges[x, k]] * pay[sx, strat[nbr[x, k]]]
    for x in range(n):
        for k in range(8):
            y = nbr[x, k]
            if strat[y] != strat[x] and totals[y] > totals[x]:
                return True
    return False


def is_frozen(lattice: Lattice, params: GameParams) -> bool:
    """True when no strategy can ever change again.

    Only meaningful on a static network (``delta_step == 0``): there the
    weights never move, so if no agent has a differently-playing neighbour
    with strictly higher accumulated utility, no imitation can occur.
    Always false when weights can still evolve.
    """
    if params.delta_step != 0.0:
        return False
    kernel = _Kernel(lattice, params)
    return not _has_move(lattice.strategies, lattice.weights, kernel.nbr, kernel.edges, kernel.pay)


def _readonly_view(lattice: Lattice) -> Lattice:
    strat = lattice.strategies.view()
    weights = lattice.weights.view()
    strat.flags.writeable = False
    weights.flags.writeable = False
    return Lattice(lattice.side, strat, weights)


def run(
    lattice: Lattice,
    params: GameParams,
    n_steps: int,
    rng: RngStream,
    observers: Iterable[Observer] = (),
    record_every: int = 1,
    stop_on_absorption: bool = False,
    stop_when: Optional[Callable[[int, tuple], bool]] = None,
    start_step: int = 0,
) -> TimeSeries:
    """Run ``n_steps`` Monte Carlo steps and record strategy fractions.

    Step 0 (the initial state) and the last executed step are always
    recorded; in between every ``record_every``-th step is.  Observers are
    called as ``observer(step, counts, lattice_view)`` on every step.  The run
    ends early after an absorbing step when ``stop_on_absorption`` is set, or
    when ``stop_when(step, counts)`` returns true.  Steps are numbered from
    ``start_step`` so a run can continue an earlier one.
    """
    if n_steps < 0:
        raise ValueError("n_steps must be >= 0")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")
    observers = list(observers)
    n = lattice.n_agents
    series = TimeSeries(n_agents=n)
    kernel = _Kernel(lattice, params)
    view = _readonly_view(lattice)

    counts = tuple(int(c) for c in kernel.counts)
    step = start_step
    end = start_step + n_steps
    series.append(step, counts)
    for obs in observers:
        obs(step, counts, view)
    stopped = (stop_on_absorption and _absorbed(counts, n) is not None) or (
        stop_when is not None and stop_when(step, counts)
    )
    while step < end and not stopped:
        step += 1
        kernel.inner_steps(rng, n)
        counts = tuple(int(c) for c in kernel.counts)
        for obs in observers:
            obs(step, counts, view)
        stopped = (stop_on_absorption and _absorbed(counts, n) is not None) or (
            stop_when is not None and stop_when(step, counts)
        )
        if (step - start_step) % record_every == 0 or stopped or step == end:
            series.append(step, counts)
    series.stop_step = step
    series.absorbed = _absorbed(counts, n)
    return series
