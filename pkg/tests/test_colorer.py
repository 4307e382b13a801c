import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ksgadget import colorer
from ksgadget.colorer import (Coloring, ColoringError, GadgetCertificate, GadgetRefusal,
                              KSCertificate, SearchBudgetExceeded, enumerate_colorings,
                              extract_gadget, find_gadget_pairs, forced_value, is_colorable,
                              is_gadget, make_edge_critical, make_vertex_critical, solve,
                              validate)
from ksgadget.constructions import build_clifton, build_ks_from_gadget
from ksgadget.graph import Graph, delete_edges, delete_vertex, disjoint_union

from conftest import complete, cycle


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    kind = draw(st.lists(st.sampled_from("--ex"), min_size=len(pairs), max_size=len(pairs)))
    edges = frozenset(p for p, k in zip(pairs, kind) if k == "e")
    excl = frozenset(p for p, k in zip(pairs, kind) if k == "x")
    return Graph(n, edges, excl)


def brute_force(g: Graph) -> list:
    """All valid colorings by exhaustive search, using networkx for the cliques."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    cliques = [tuple(c) for c in nx.find_cliques(h)]
    omega = max(len(c) for c in cliques)
    size = g.dim or omega
    maximum = [c for c in cliques if len(c) == size]
    out = []
    for bits in itertools.product((0, 1), repeat=g.n):
        if any(bits[a] and bits[b] for a, b in g.edges | g.exclusive):
            continue
        if all(sum(bits[v] for v in c) == 1 for c in maximum):
            out.append(bits)
    return out


@given(graphs())
@settings(max_examples=200, deadline=None)
def test_enumeration_matches_brute_force(g):
    assert [c.values for c in enumerate_colorings(g).colorings] == brute_force(g)


@given(graphs())
@settings(max_examples=200, deadline=None)
def test_solve_agrees_with_enumeration(g):
    res = solve(g)
    expected = brute_force(g)
    if expected:
        assert isinstance(res, Coloring) and validate(g, res) == []
    else:
        assert isinstance(res, KSCertificate)


@given(graphs(max_n=8), st.data())
@settings(max_examples=150, deadline=None)
def test_is_gadget_matches_enumeration(g, data):
    if g.n < 2:
        return
    a, b = data.draw(st.lists(st.integers(0, g.n - 1), min_size=2, max_size=2, unique=True))
    cols = brute_force(g)
    verdict = is_gadget(g, a, b)
    if g.adjacent(a, b):
        assert verdict.reason == "adjacent"
    elif not cols:
        assert verdict.reason == "uncolorable"
    else:
        assert bool(verdict) == (not any(c[a] and c[b] for c in cols))
        if not verdict:
            assert verdict.counterexample.values in cols


@given(graphs(max_n=7))
@settings(max_examples=80, deadline=None)
def test_gadget_pairs_match_enumeration(g):
    cols = brute_force(g)
    if not cols:
        with pytest.raises(ColoringError):
            find_gadget_pairs(g)
        return
    expected = [(a, b) for a, b in itertools.combinations(range(g.n), 2)
                if not g.adjacent(a, b) and not any(c[a] and c[b] for c in cols)]
    assert find_gadget_pairs(g) == expected


@given(graphs(max_n=8))
@settings(max_examples=60, deadline=None)
def test_solver_is_deterministic(g):
    r1, r2 = solve(g), solve(g)
    assert r1 == r2


def test_spec_examples():
    one = Graph(1)
    assert [c.bits() for c in enumerate_colorings(one).colorings] == ["1"]
    k2 = complete(2)
    assert [c.bits() for c in enumerate_colorings(k2).colorings] == ["01", "10"]
    assert forced_value(k2, 0) is None
    assert find_gadget_pairs(cycle(4)) == []


def test_clifton_gadget():
    g = build_clifton().graph
    cert = is_gadget(g, 0, 7)
    assert isinstance(cert, GadgetCertificate)
    assert validate(g, cert.witness) == []
    assert len(enumerate_colorings(g).colorings) == 14
    assert (0, 7) in find_gadget_pairs(g)
    data = cert.to_json()
    assert data["kind"] == "gadget-certificate" and data["pair"] == [0, 7]
    refusal = is_gadget(g, 0, 1)
    assert isinstance(refusal, GadgetRefusal) and refusal.reason == "adjacent"


def test_pins_and_forced_values():
    g = complete(3)
    assert solve(g, {0: 1}).values == (1, 0, 0)
    assert isinstance(solve(g, {0: 0, 1: 0, 2: 0}), KSCertificate)
    with pytest.raises(ValueError):
        solve(g, {0: 2})
    with pytest.raises(IndexError):
        solve(g, {5: 1})
    # triangle plus a pendant vertex on a second triangle: shared vertex is free
    tri2 = Graph(5, frozenset({(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)}))
    assert forced_value(tri2, 2) is None
    en = enumerate_colorings(tri2, fixed={2: 1})
    assert [c.bits() for c in en.colorings] == ["00100"]


def test_enumeration_cap_and_budget():
    g = Graph(6)
    assert len(enumerate_colorings(g).colorings) == 1  # every vertex is a maximum clique
    g = cycle(6)
    en = enumerate_colorings(g, cap=1)
    assert len(en.colorings) == 1 and en.truncated
    with pytest.raises(ValueError):
        enumerate_colorings(g, cap=0)
    ks = build_ks_from_gadget(build_clifton(), 3, 1).graph
    with pytest.raises(SearchBudgetExceeded):
        solve(ks, budget=3)


@pytest.fixture(scope="module")
def ks_graph():
    return build_ks_from_gadget(build_clifton(), 3, 1).graph


def test_ks_certificate_is_reproducible(ks_graph):
    c1, c2 = solve(ks_graph), solve(ks_graph)
    assert isinstance(c1, KSCertificate)
    assert c1.to_json() == c2.to_json()
    assert len(c1.digest) == 64


def test_vertex_critical(ks_graph):
    crit, keep = make_vertex_critical(ks_graph)
    assert not is_colorable(crit)
    assert all(is_colorable(delete_vertex(crit, v)[0]) for v in range(crit.n))
    assert len(keep) == crit.n
    # already critical: fixed point
    again, keep2 = make_vertex_critical(crit)
    assert again == crit and keep2 == list(range(crit.n))
    with pytest.raises(ColoringError):
        make_vertex_critical(cycle(4))


def test_critical_core_of_disjoint_union(ks_graph):
    both = disjoint_union(ks_graph, ks_graph)
    crit, keep = make_vertex_critical(both)
    assert all(v < ks_graph.n for v in keep) or all(v >= ks_graph.n for v in keep)


def test_edge_critical(ks_graph):
    core, _ = make_vertex_critical(ks_graph)
    crit = make_edge_critical(core)
    assert not is_colorable(crit)
    for e in crit.edges:
        assert is_colorable(delete_edges(crit, [e])[0])


def test_extract_gadget(ks_graph):
    ex = extract_gadget(ks_graph)
    assert is_gadget(ex.graph, *ex.pair)
    a, b = (ex.origin[v] for v in ex.pair)
    assert not ks_graph.adjacent(a, b)
    with pytest.raises(ColoringError):
        extract_gadget(complete(3))


def test_luby_sequence():
    assert [colorer._luby(i) for i in range(15)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]
