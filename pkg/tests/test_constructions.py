from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ksgadget import scalars as S
from ksgadget.colorer import (Coloring, enumerate_colorings, forced_value, is_colorable,
                              is_gadget, solve)
from ksgadget.constructions import (Construction, build_alt_extended, build_clifton,
                                    build_clifton_lift, build_g0, build_g1, build_gadget_pair,
                                    build_ks1, build_ks2, build_ks_from_gadget,
                                    build_nested_extended, build_pitowsky, build_si_simplex,
                                    build_state_dependent_40, gadget_case, minimal_t,
                                    nested_levels, pitowsky_frame)
from ksgadget.fractional import indeterminacy_table, is_extended_gadget, lp_maximize
from ksgadget.graph import canonical_json, maximal_cliques
from ksgadget.vectors import check_faithful, overlap

TIGHT = 1e-20


def _overlap(con):
    a, b = con.pair
    return S.to_mp(overlap(con.vectors[a], con.vectors[b]))


@pytest.mark.parametrize("d", [3, 4, 6])
def test_clifton_lift(d):
    con = build_clifton_lift(d)
    assert con.graph.n == 5 + d
    assert maximal_cliques(con.graph).omega == d
    assert is_gadget(con.graph, *con.pair)
    assert check_faithful(con.vectors, con.graph, 0)


@given(st.fractions(Fraction(1, 20), Fraction(19, 20)))
@settings(max_examples=12, deadline=None)
def test_gadget_pair_reaches_any_overlap(o):
    con = build_gadget_pair(o)
    assert abs(_overlap(con) - S.to_mp(o)) <= 1e-30
    assert con.graph.n == (22 if gadget_case(o) == "i" else 43)
    assert is_gadget(con.graph, *con.pair)
    assert check_faithful(con.vectors, con.graph, TIGHT)


def test_gadget_case_boundary():
    assert gadget_case(S.sqrt(Fraction(1, 2))) == "i"
    assert gadget_case(Fraction(71, 100)) == "ii"
    with pytest.raises(ValueError):
        gadget_case(Fraction(1))


@pytest.mark.parametrize("k", range(1, 9))
def test_nested_sizes(k):
    con = build_nested_extended(k)
    assert con.graph.n == 8 + 6 * (k - 1)
    assert len(con.graph.edges) == (10 * k + 1 if k <= 7 else 85)
    assert abs(_overlap(con) - S.to_mp(Fraction(k, k + 2))) <= 1e-9


def test_nested_with_target_overlap():
    con = build_nested_extended(3, Fraction(1, 2))
    assert abs(_overlap(con) - S.to_mp(Fraction(1, 2))) <= 1e-30
    assert is_extended_gadget(con.graph, *con.pair)
    assert nested_levels(Fraction(1, 2)) == 2
    assert nested_levels(Fraction(3, 5)) == 3
    with pytest.raises(ValueError):
        build_nested_extended(1, Fraction(1, 2))


def test_alt_extended():
    x = Fraction(1, 2)
    t = minimal_t(x)
    con = build_alt_extended(x, t)
    assert con.graph.n <= 10 + 4 * t
    assert abs(_overlap(con) - S.to_mp(x)) <= 1e-30
    assert is_extended_gadget(con.graph, *con.pair)
    with pytest.raises(ValueError, match="smallest valid t"):
        build_alt_extended(Fraction(9, 10), 1)


def test_state_dependent_set():
    con = build_state_dependent_40()
    g = con.graph
    # u31 repeats the ray of u19, so only 39 distinct rays remain
    assert "u19" in g.labels and "u31" not in g.labels
    assert g.n == 39
    u1 = con.distinguished[0]
    assert forced_value(g, u1) == 0
    en = enumerate_colorings(g)
    assert len(en.colorings) == 369
    assert all(c[u1] == 0 for c in en.colorings)


def test_ks_from_clifton():
    con = build_ks_from_gadget(build_clifton(), 3, 1)
    assert maximal_cliques(con.graph).omega == 3
    assert con.graph.n == 216
    assert not is_colorable(con.graph)
    assert check_faithful(con.vectors, con.graph, TIGHT)
    with pytest.raises(ValueError):
        build_ks_from_gadget(build_clifton(), 3, 2)


def test_ks_from_gadget_requires_vectors():
    with pytest.raises(ValueError):
        build_ks_from_gadget(build_g0(), 3, 1)


def test_virtual_assemblies():
    g0 = build_g0()
    assert forced_value(g0.graph, g0.distinguished[0]) == 0
    g1 = build_g1()
    assert forced_value(g1.graph, g1.distinguished[0]) == 1
    for con in (build_ks1(), build_ks2()):
        assert not isinstance(solve(con.graph), Coloring)
    si = build_si_simplex(3)
    assert lp_maximize(si.graph, [1] * 4).optimum == 1
    assert si.params["inequality"]["quantum_value"] == "4/3"


@pytest.mark.parametrize("builder,n", [(build_g0, 64), (build_g1, 126), (build_ks1, 185),
                                       (build_ks2, 179)])
def test_expanded_assemblies(builder, n):
    con = builder(mode="expanded")
    assert con.graph.n == n
    assert check_faithful(con.vectors, con.graph, TIGHT)
    virt = builder(mode="virtual")
    assert is_colorable(con.graph) == is_colorable(virt.graph)


def test_expanded_simplex_set():
    con = build_si_simplex(3, mode="expanded")
    assert con.graph.n == 126
    assert is_colorable(con.graph)
    assert check_faithful(con.vectors, con.graph, TIGHT)


def test_pitowsky_frame_and_table():
    o = Fraction(3, 5)
    frame = pitowsky_frame(o)
    assert overlap(frame[0], frame[1]) == o
    expected = {(0, 0): True, (0, 1): False, (1, 0): False, (1, 1): False}
    con = build_pitowsky(o, mode="expanded")
    assert con.params["levels"] == [3, 8, 8]
    assert indeterminacy_table(con.graph, *con.pair) == expected
    with pytest.raises(ValueError):
        build_pitowsky(Fraction(1))


@pytest.mark.parametrize("con", [build_clifton(), build_gadget_pair(Fraction(3, 10)),
                                 build_ks1(), build_pitowsky(Fraction(1, 3))],
                         ids=["clifton", "gadget-pair", "ks1", "pitowsky"])
def test_json_round_trip(con):
    back = Construction.from_json(con.to_json())
    assert back.graph == con.graph
    assert canonical_json(back.to_json()) == canonical_json(con.to_json())


def test_bad_modes():
    with pytest.raises(ValueError):
        build_g0(mode="sideways")
    with pytest.raises(ValueError):
        build_si_simplex(2)
