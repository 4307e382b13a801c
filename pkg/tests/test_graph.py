import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ksgadget.graph import (Graph, canonical_json, delete_edges, delete_vertex,
                            disjoint_union, find_forbidden, graph_hash, induced_subgraph,
                            maximal_cliques, maximum_cliques, square_pattern, union_cliques)

from conftest import complete, cycle


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(p for p, keep in zip(pairs, mask) if keep))


def _nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@given(graphs())
@settings(max_examples=150, deadline=None)
def test_maximal_cliques_match_networkx(g):
    ours = set(maximal_cliques(g).maximal_cliques)
    theirs = {tuple(sorted(c)) for c in nx.find_cliques(_nx(g))}
    assert ours == theirs
    assert maximal_cliques(g).omega == max(len(c) for c in theirs)


@given(graphs())
@settings(max_examples=100, deadline=None)
def test_cliques_are_lexicographic_and_maximal(g):
    cl = maximal_cliques(g).maximal_cliques
    assert list(cl) == sorted(cl)
    for c in cl:
        assert all(g.adjacent(a, b) for a, b in itertools.combinations(c, 2))
        outside = set(range(g.n)) - set(c)
        assert not any(all(g.adjacent(v, u) for u in c) for v in outside)


def _count_squares(g: Graph) -> int:
    """Number of 4-cycles as edge sets, by brute force over vertex quadruples."""
    seen = set()
    for quad in itertools.permutations(range(g.n), 4):
        a, b, c, d = quad
        if all(g.adjacent(x, y) for x, y in ((a, b), (b, c), (c, d), (d, a))):
            seen.add(frozenset(frozenset(e) for e in ((a, b), (b, c), (c, d), (d, a))))
    return len(seen)


@given(graphs(max_n=7))
@settings(max_examples=100, deadline=None)
def test_square_detector_counts_four_cycles(g):
    assert len(find_forbidden(g, 3)) == _count_squares(g)


def test_forbidden_patterns():
    assert len(find_forbidden(cycle(4), 3)) == 1
    assert find_forbidden(complete(4), 3)  # K4 contains three squares
    assert len(find_forbidden(complete(4), 3)) == 3
    assert find_forbidden(cycle(4), 4) == []
    for d in (4, 5, 6):
        pat = square_pattern(d)
        assert pat.n == d + 1
        assert find_forbidden(pat, d)
        assert find_forbidden(cycle(5), d) == []
    with pytest.raises(ValueError, match="unsupported dimension"):
        find_forbidden(cycle(4), 2)


def test_dim_controls_maximum_cliques():
    g = complete(3)
    assert maximum_cliques(g) == [(0, 1, 2)]
    assert maximum_cliques(g.with_dim(4)) == []
    with pytest.raises(ValueError):
        maximum_cliques(g.with_dim(2))
    edgeless = Graph(3)
    assert maximum_cliques(edgeless) == [(0,), (1,), (2,)]


def test_union_cliques_include_exclusive_pairs():
    g = Graph(3, frozenset({(0, 1)}), frozenset({(1, 2), (0, 2)}))
    assert union_cliques(g) == [(0, 1, 2)]
    assert maximal_cliques(g).maximal_cliques == ((0, 1), (2,))


def test_validation_errors():
    with pytest.raises(ValueError, match="self-loop"):
        Graph(2, frozenset({(1, 1)}))
    with pytest.raises(IndexError):
        Graph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        Graph(2, frozenset({(0, 1)}), frozenset({(0, 1)}))
    with pytest.raises(ValueError, match="i<j"):
        Graph.from_json({"n": 3, "edges": [[2, 1]]})
    with pytest.raises(ValueError):
        Graph.from_json({"edges": []})


@given(graphs())
@settings(max_examples=50, deadline=None)
def test_json_round_trip(g):
    g = Graph(g.n, g.edges, frozenset(), tuple(f"v{i}" for i in range(g.n)), None)
    back = Graph.from_json(g.to_json())
    assert back == g
    assert canonical_json(back.to_json()) == canonical_json(g.to_json())
    assert graph_hash(back) == graph_hash(g)


def test_subgraph_operations():
    g = cycle(5)
    h, idx = delete_vertex(g, 0)
    assert h.n == 4 and len(h.edges) == 3 and idx == {1: 0, 2: 1, 3: 2, 4: 3}
    h, _ = delete_edges(g, [(0, 1)])
    assert (0, 1) not in h.edges and len(h.edges) == 4
    with pytest.raises(IndexError):
        delete_edges(g, [(0, 2)])
    h, idx = induced_subgraph(g, [0, 1, 2])
    assert sorted(h.edges) == [(0, 1), (1, 2)]
    u = disjoint_union(complete(3), cycle(4))
    assert u.n == 7 and len(u.edges) == 7
    assert maximal_cliques(u).omega == 3
