import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coevopd.game import GameParams, Strategy, payoff

C, D, A = Strategy.C, Strategy.D, Strategy.A
PAPER = GameParams(b=1.9, l=0.5)

params_st = st.builds(
    GameParams,
    b=st.floats(1.0, 2.0, exclude_min=True, exclude_max=True),
    l=st.floats(0.0, 1.0, exclude_min=True, exclude_max=True),
    delta_step=st.just(0.0),
    delta_max=st.just(0.0),
)


@pytest.mark.parametrize(
    "sx, sy, expected",
    [(C, C, 1.0), (D, C, 1.9), (A, D, 0.5), (C, D, 0.0), (D, D, 0.0)],
)
def test_payoff_examples(sx, sy, expected):
    assert payoff(sx, sy, PAPER) == expected


def test_strategy_has_exactly_three_values():
    assert len(Strategy) == 3
    assert {s.name for s in Strategy} == {"C", "D", "A"}
    with pytest.raises(ValueError):
        Strategy(3)


def test_matrix_matches_rescaled_table():
    # rows/cols C, D, A with R=1, S=0, T=b, P=0, L=l
    R, S, T, P, L = 1.0, 0.0, 1.9, 0.0, 0.5
    table = np.array([[R, S, L], [T, P, L], [L, L, L]])
    assert np.array_equal(PAPER.payoff_matrix(), table)


@given(params_st)
def test_abstention_is_symmetric(params):
    for s in Strategy:
        assert payoff(A, s, params) == payoff(s, A, params) == params.l


@given(params_st)
def test_defection_weakly_dominates(params):
    for s in Strategy:
        assert payoff(D, s, params) >= payoff(C, s, params)


@given(params_st)
def test_payoff_ordering(params):
    m = params.payoff_matrix()
    T, R, L, P, S = m[D, C], m[C, C], m[A, A], m[D, D], m[C, D]
    assert T > R > L > P == S == 0.0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(b=2.5), dict(b=1.0), dict(b=2.0), dict(l=0.0), dict(l=1.0),
        dict(delta_step=0.9, delta_max=0.8), dict(delta_max=1.2, delta_step=0.1),
        dict(delta_step=-0.1),
    ],
)
def test_params_reject_out_of_range(kwargs):
    with pytest.raises(ValueError):
        GameParams(**kwargs)


def test_static_network_params_allowed():
    p = GameParams(delta_step=0.0, delta_max=0.0)
    assert p.w_min == p.w_max == 1.0


def test_strategy_parse():
    assert Strategy.parse("d") is D
    assert Strategy.parse("abstainer") is A
    assert Strategy.parse(0) is C
    with pytest.raises(ValueError):
        Strategy.parse("X")


def test_matrix_agrees_with_payoff():
    m = PAPER.payoff_matrix()
    for sx, sy in itertools.product(Strategy, repeat=2):
        assert m[sx, sy] == payoff(sx, sy, PAPER)
