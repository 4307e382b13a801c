import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ksgadget import scalars as S
from ksgadget.constructions import CLIFTON_VECTORS
from ksgadget.scalars import Approx, Quad, ctx
from ksgadget.vectors import (VectorSet, apply_linear_map, canonical_ray, check_faithful,
                              embed_dim, faithful_version, frame_residual, gram, inner,
                              lift_parameter, orthogonality_graph, overlap, pad_overlap_lift,
                              same_ray, simplex_frame)

int_vectors = st.lists(
    st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any), min_size=1, max_size=10)


@given(int_vectors)
@settings(max_examples=150, deadline=None)
def test_orthogonality_graph_matches_numpy(vs):
    V = VectorSet(3, tuple(tuple(v) for v in vs))
    g = orthogonality_graph(V)
    M = np.array(vs)
    G = M @ M.T
    expected = {(i, j) for i, j in itertools.combinations(range(len(vs)), 2) if G[i, j] == 0}
    assert set(g.edges) == expected


@given(int_vectors)
@settings(max_examples=100, deadline=None)
def test_faithful_version_has_distinct_rays(vs):
    V = VectorSet(3, tuple(tuple(v) for v in vs))
    W, g, merge = faithful_version(V)
    assert check_faithful(W, g)
    rays = {canonical_ray(v) for v in V.vectors}
    assert len(W) == len(rays)
    for i, k in merge.items():
        assert same_ray(V[i], W[k])


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3).filter(any),
       st.integers(-4, 4).filter(bool))
@settings(max_examples=100, deadline=None)
def test_canonical_ray_is_scale_invariant(v, k):
    assert canonical_ray(v) == canonical_ray([k * x for x in v])


def test_clifton_gram_is_exact():
    V = VectorSet(3, CLIFTON_VECTORS)
    G = gram(V)
    assert G[0][7] == Fraction(-1, 3)
    assert overlap(V[0], V[7]) == Fraction(1, 3)
    assert all(G[i][i] == 1 for i in range(8))
    assert overlap(V[0], V[1]) == 0


def test_quad_arithmetic_stays_exact():
    r2 = Quad(0, 1, 2)
    assert r2 * r2 == 2
    assert (1 + r2) * (1 - r2) == -1
    assert isinstance(S.sqrt(Fraction(1, 2)), Quad)
    assert S.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    mixed = r2 + Quad(0, 1, 3)
    assert isinstance(mixed, Approx)
    assert abs(float(S.to_mp(mixed)) - (2 ** 0.5 + 3 ** 0.5)) < 1e-15
    for x in (Fraction(-7, 3), r2 / 3 + 1, Approx(ctx.pi)):
        assert S.from_json(S.to_json(x)) == x or abs(S.to_mp(S.from_json(S.to_json(x)))
                                                      - S.to_mp(x)) < 1e-35


def test_vector_json_round_trip():
    V = VectorSet(3, ((1, Quad(0, 1, 2), 0), (Fraction(1, 3), 0, 1), (Approx(ctx.e), 1, 1)))
    back = VectorSet.from_json(V.to_json())
    assert back.to_json() == V.to_json()
    with pytest.raises(ValueError):
        VectorSet(3, ((0, 0, 0),))
    with pytest.raises(ValueError):
        VectorSet(3, ((1, 0),))


@pytest.mark.parametrize("d", range(2, 11))
def test_simplex_frame(d):
    F = simplex_frame(d)
    assert len(F) == d + 1
    assert frame_residual(F) <= 1e-12
    for u, v in itertools.combinations(F.vectors, 2):
        assert abs(S.to_mp(inner(u, v)) + ctx.mpf(1) / d) < 1e-30


def test_simplex_frame_is_tight_for_random_states():
    F = simplex_frame(5)
    rng = np.random.default_rng(7)
    M = np.array([[float(S.to_mp(x)) for x in v] for v in F.vectors])
    for _ in range(20):
        psi = rng.normal(size=5)
        psi /= np.linalg.norm(psi)
        assert abs(np.sum((M @ psi) ** 2) - 6 / 5) < 1e-12


def test_overlap_lifts():
    V = VectorSet(3, CLIFTON_VECTORS)
    W = pad_overlap_lift(V, 0, 7, Fraction(1, 5))
    assert W.d == 4 and len(W) == 9
    assert abs(S.to_mp(overlap(W[0], W[7])) - ctx.mpf(1) / 5) < 1e-30
    x = lift_parameter(Fraction(1, 3), Fraction(1, 5))
    assert S.to_mp(Fraction(1, 3) / S.sqrt(1 + x * x)) - ctx.mpf(1) / 5 < 1e-30
    with pytest.raises(ValueError):
        pad_overlap_lift(V, 0, 7, Fraction(1, 2))
    E = embed_dim(V, 5, complete=True)
    assert E.d == 5 and len(E) == 10
    assert orthogonality_graph(E).edges >= orthogonality_graph(V).edges


def test_linear_map_preserves_orthogonality_under_rotation():
    V = VectorSet(3, CLIFTON_VECTORS)
    R = ((Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)),
         (Fraction(2, 3), Fraction(1, 3), Fraction(-2, 3)),
         (Fraction(2, 3), Fraction(-2, 3), Fraction(1, 3)))
    assert orthogonality_graph(apply_linear_map(V, R)).edges == orthogonality_graph(V).edges


def test_tolerance_controls_near_orthogonal_pairs():
    eps = Fraction(1, 10 ** 12)
    V = VectorSet(2, ((1, 0), (eps, 1)))
    assert orthogonality_graph(V, 1e-9).edges == {(0, 1)}
    assert orthogonality_graph(V, 0).edges == frozenset()
    with pytest.raises(ValueError):
        orthogonality_graph(V, -1)
