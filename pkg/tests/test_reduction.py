import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ksgadget.colorer import Coloring, solve, validate
from ksgadget.graph import Graph, find_forbidden, maximal_cliques
from ksgadget.reduction import (circulant_vector, decode_coloring, k_colorable,
                                lift_coloring, reduce, shift, size_bound, verify_equivalence)
from ksgadget.scalars import ctx

from conftest import complete, cycle, wheel


def _brute_k_colorable(g: Graph, k: int) -> bool:
    return any(all(c[a] != c[b] for a, b in g.edges)
               for c in itertools.product(range(k), repeat=g.n))


@st.composite
def omega3_graphs(draw):
    """Random graphs on up to 7 vertices that contain a triangle but no K4."""
    n = draw(st.integers(3, 7))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, keep in zip(pairs, mask) if keep} | {(0, 1), (0, 2), (1, 2)}
    g = Graph(n, frozenset(edges))
    if maximal_cliques(g).omega != 3:
        edges = {(0, 1), (0, 2), (1, 2)} | {e for e in edges if 3 not in e}
        g = Graph(n, frozenset(edges))
    return g


@given(omega3_graphs())
@settings(max_examples=80, deadline=None)
def test_virtual_reduction_equivalence(g):
    if maximal_cliques(g).omega != 3:
        return
    r = reduce(g)
    assert r.target.n == 3 * g.n
    assert r.target.n <= size_bound(g, 3, 2)
    eq = verify_equivalence(g, r)
    assert eq.holds, eq.detail
    assert eq.source_colorable == _brute_k_colorable(g, 3)


@given(omega3_graphs())
@settings(max_examples=80, deadline=None)
def test_k_colorable_matches_brute_force(g):
    ok, colors = k_colorable(g, 3)
    assert ok == _brute_k_colorable(g, 3)
    if ok:
        assert all(colors[a] != colors[b] for a, b in g.edges)
        assert set(colors) <= {1, 2, 3}


def test_lift_and_decode_round_trip():
    g = cycle(5)
    g = Graph(6, g.edges | {(0, 5), (1, 5)})  # add a triangle so omega is 3
    r = reduce(g)
    ok, colors = k_colorable(g, 3)
    assert ok
    f = solve(r.target, lift_coloring(r, colors))
    assert isinstance(f, Coloring) and validate(r.target, f) == []
    assert decode_coloring(r, f.values) == colors


def test_reduction_rejects_small_omega():
    with pytest.raises(ValueError, match="clique number"):
        reduce(cycle(4))
    with pytest.raises(ValueError):
        reduce(complete(3), mode="sideways")


def test_w5_is_not_three_colorable():
    r = reduce(wheel(5))
    eq = verify_equivalence(wheel(5), r)
    assert eq.holds and not eq.source_colorable and not eq.target_colorable


def test_petersen_is_three_colorable():
    p = nx.petersen_graph()
    g = Graph(10, frozenset(tuple(sorted(e)) for e in p.edges()))
    assert k_colorable(g, 3)[0]


def test_expanded_triangle():
    r = reduce(complete(3), mode="expanded")
    h = r.target
    assert h.n == 189 and len(h.edges) == 342
    assert h.n <= size_bound(complete(3), 3, 22)
    assert maximal_cliques(h).omega == 3
    assert find_forbidden(h, 3) == []
    assert verify_equivalence(complete(3), r).holds
    assert len({p.gadget for p in r.placements}) <= 3
    assert r.to_json()["mode"] == "expanded"


def test_expanded_w5():
    g = wheel(5)
    r = reduce(g, mode="expanded")
    eq = verify_equivalence(g, r)
    assert eq.holds and not eq.target_colorable


@pytest.mark.parametrize("w", [3, 4, 5])
def test_circulant_shifts_are_orthonormal(w):
    x = circulant_vector(w, 2)
    rows = [shift(x, i) for i in range(w)]
    for i in range(w):
        for j in range(w):
            dot = ctx.fsum(a * b for a, b in zip(rows[i], rows[j]))
            assert abs(dot - (1 if i == j else 0)) < 1e-30
