import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coevopd import engine
from coevopd.game import GameParams, Strategy
from coevopd.lattice import Lattice
from coevopd.rng import RngStream
from coevopd.scenarios import (
    census_after_mutation,
    init_uniform_thirds,
    mutate_species,
    neighborhood_census,
    replace_species,
    reset_weights,
)

C, D, A = Strategy.C, Strategy.D, Strategy.A


@pytest.fixture(scope="module")
def evolved():
    rng = RngStream(9)
    lat = init_uniform_thirds(20, rng)
    engine.run(lat, GameParams(), 30, rng)
    return lat


def test_uniform_thirds_large_lattice():
    lat = init_uniform_thirds(102, RngStream(0))
    counts = lat.counts()
    assert sum(counts) == 10404
    # binomial sd ~ 48; 5 sd band around 3468
    assert all(abs(c - 3468) < 240 for c in counts)
    assert lat.weights.size == 41616 and np.all(lat.weights == 1.0)
    assert sum(lat.fractions()) == pytest.approx(1.0, abs=1e-12)


def test_uniform_thirds_reproducible():
    a = init_uniform_thirds(3, RngStream(17))
    b = init_uniform_thirds(3, RngStream(17))
    assert a.strategies.tolist() == b.strategies.tolist()


def test_replace_species_two_left(evolved):
    lat = evolved.copy()
    before = lat.counts()
    weights = lat.weights.copy()
    replace_species(lat, D, A)
    after = lat.counts()
    assert after[D] == 0
    assert after[A] == before[A] + before[D]
    assert set(np.unique(lat.strategies)) <= {int(C), int(A)}
    assert np.array_equal(lat.weights, weights)


def test_replace_species_absent_is_identity():
    lat = Lattice.filled(4, C)
    replace_species(lat, D, A)
    assert lat.counts() == (16, 0, 0)


def test_mutation_rate(evolved):
    lat = evolved.copy()
    n_d = lat.counts()[D]
    mutate_species(lat, D, C, 0.99, None, RngStream(1))
    assert lat.counts()[D] == n_d - round(0.99 * n_d)


def test_mutation_rate_zero_is_identity(evolved):
    lat = evolved.copy()
    mutate_species(lat, D, C, 0.0, None, RngStream(1))
    assert np.array_equal(lat.strategies, evolved.strategies)


@given(st.integers(0, 5), st.integers(0, 2**32))
def test_keep_count_leaves_exactly_k(k, seed):
    lat = init_uniform_thirds(8, RngStream(seed))
    if lat.counts()[D] < k:
        k = lat.counts()[D]
    mutate_species(lat, D, C, 0.5, k, RngStream(seed + 1))
    assert lat.counts()[D] == k


def test_keep_count_too_large(evolved):
    lat = evolved.copy()
    with pytest.raises(ValueError):
        mutate_species(lat, D, C, 1.0, lat.counts()[D] + 1, RngStream(0))


def test_keep_at_targets_survivor(evolved):
    lat = evolved.copy()
    target = int(np.flatnonzero(lat.strategies == D)[3])
    weights = lat.weights.copy()
    mutate_species(lat, D, C, 1.0, 1, RngStream(0), keep_at=lat.coords(target))
    assert lat.counts()[D] == 1
    assert lat.strategies[target] == D
    assert np.array_equal(lat.weights, weights)


def test_keep_at_must_hold_source_strategy():
    lat = Lattice.filled(4, C)
    with pytest.raises(ValueError):
        mutate_species(lat, D, C, 1.0, 1, RngStream(0), keep_at=(0, 0))


def test_same_strategy_rejected():
    lat = Lattice.filled(4, C)
    with pytest.raises(ValueError):
        replace_species(lat, C, C)
    with pytest.raises(ValueError):
        mutate_species(lat, C, C, 0.5, None, RngStream(0))


def test_reset_weights(evolved):
    lat = evolved.copy()
    assert not np.all(lat.weights == 1.0)
    strat = lat.strategies.copy()
    reset_weights(lat)
    assert np.all(lat.weights == 1.0) and lat.weights.size == 4 * 400
    assert np.array_equal(lat.strategies, strat)
    reset_weights(lat)
    assert np.all(lat.weights == 1.0)


def test_census_all_cooperators():
    assert neighborhood_census(Lattice.filled(3, C), 4) == (8, 0, 0)


def test_census_hand_enumerated():
    # C D A / A A C / D D C ; agent (0,0) wraps to every other cell once
    lat = Lattice.from_grid(["CDA", "AAC", "DDC"])
    # others: D A A A C D D C -> C=2, D=3, A=3
    assert neighborhood_census(lat, 0) == (2, 3, 3)
    # agent (1,1)=A also sees all others: C D A A C D D C -> C=3, D=3, A=2
    assert neighborhood_census(lat, 4) == (3, 3, 2)


@given(st.integers(0, 2**32))
def test_census_sums_to_eight(seed):
    lat = init_uniform_thirds(5, RngStream(seed))
    for x in range(lat.n_agents):
        assert sum(neighborhood_census(lat, x)) == 8


def test_census_after_mutation_matches_direct(evolved):
    pre = census_after_mutation(evolved, D, C)
    lat = evolved.copy()
    replace_species(lat, D, C)
    for x in range(0, lat.n_agents, 37):
        assert tuple(pre[x]) == neighborhood_census(lat, x)
