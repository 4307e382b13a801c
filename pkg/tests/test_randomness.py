from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ksgadget.constructions import build_clifton, build_g0, build_gadget_pair
from ksgadget.randomness import (born_probability, pair_bounds, quantum_prob,
                                 restricted_feasible, restricted_lp_clifton)

small_vec = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


@given(small_vec, small_vec)
@settings(max_examples=200, deadline=None)
def test_born_sum_equals_overlap_formula(u, v):
    assert born_probability(u, v) == quantum_prob(u, v)
    assert 0 <= quantum_prob(u, v) <= Fraction(1, 3)


def test_clifton_bounds():
    b = pair_bounds(build_clifton(), 0, 7)
    assert b.quantum_prob == Fraction(1, 27)
    assert b.lp_value == Fraction(3, 2)
    assert b.ns_upper == Fraction(3, 4)
    assert b.warning is None
    assert b.to_json() == {"pair": [0, 7], "quantum_prob": "1/27", "lp_value": "3/2",
                           "ns_upper": "3/4"}


def test_orthogonal_pair_warns():
    b = pair_bounds(build_clifton(), 0, 1)
    assert b.quantum_prob == 0 and b.warning


def test_gadget_pair_bounds():
    con = build_gadget_pair(Fraction(3, 10))
    b = pair_bounds(con, *con.pair)
    assert b.quantum_prob == Fraction(3, 100)
    assert b.lp_value == Fraction(9, 5)
    assert b.quantum_prob <= b.ns_upper


def test_restricted_polytope():
    assert restricted_lp_clifton() == Fraction(3, 2)
    p = [Fraction(x, 4) for x in (3, 1, 1, 2, 2, 1, 1, 3)]
    assert restricted_feasible(p)
    assert p[0] + p[7] == Fraction(3, 2)
    assert not restricted_feasible([1] + [0] * 6 + [1])


def test_errors():
    with pytest.raises(ValueError):
        pair_bounds(build_g0(), 0, 1)
    with pytest.raises(ValueError):
        pair_bounds(build_clifton(), 2, 2)
    with pytest.raises(IndexError):
        pair_bounds(build_clifton(), 0, 8)
