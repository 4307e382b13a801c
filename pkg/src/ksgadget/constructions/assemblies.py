"""Assemblies built from gadgets: the basis-and-center graphs G0 and G1, two
small KS graphs, simplex state-independent sets and the Pitowsky set.

Every builder has two modes. In virtual mode each gadget is recorded as a
single exclusive pair between its distinguished vertices and the graph
carries ``dim`` so that only genuine bases count as maximum cliques. In
expanded mode real gadget instances are moved rigidly onto the required
pair of rays and the whole vector list is realized.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .. import scalars as S
from ..graph import Graph
from ..vectors import overlap, simplex_frame
from .base import (MODES, Construction, approx_vec, fmt, mp_vec, pad, place, realize)
from .gadgets import build_gadget_pair, build_nested_extended, nested_levels

# rows form an orthonormal basis of R^3 with every entry nonzero, so e1 has
# overlap 1/3 or 2/3 with each row
_CAYLEY = ((Fraction(1, 3), Fraction(2, 3), Fraction(2, 3)),
           (Fraction(2, 3), Fraction(1, 3), Fraction(-2, 3)),
           (Fraction(2, 3), Fraction(-2, 3), Fraction(1, 3)))


def _basis(d: int, k: int) -> tuple:
    return tuple(Fraction(1 if i == k else 0) for i in range(d))


def _check_mode(mode: str):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


@lru_cache(maxsize=None)
def _plain_gadget(o_key: str, o):
    return build_gadget_pair(o)


def plain_gadget(o):
    """Memoized two-case gadget for overlap ``o``."""
    o = S.as_scalar(o)
    return _plain_gadget(fmt(o), o)


@lru_cache(maxsize=None)
def _extended_gadget(o_key: str, o):
    return build_nested_extended(nested_levels(o), o)


def extended_gadget(o):
    """Memoized nested gadget reaching overlap ``o`` with the fewest layers."""
    o = S.as_scalar(o)
    return _extended_gadget(fmt(o), o)


def _virtual(name: str, labels: Sequence[str], edges, placements, dim: int,
             distinguished=(), params=None) -> Construction:
    """placements: (a, b, description) triples, recorded as exclusive pairs."""
    g = Graph(len(labels), frozenset(edges),
              frozenset((min(a, b), max(a, b)) for a, b, _ in placements),
              tuple(labels), dim)
    params = dict(params or {})
    params["placements"] = [[labels[a], labels[b], why] for a, b, why in placements]
    return Construction(name, g, None, tuple(distinguished), "virtual", params)


def _expanded(name: str, frame: Sequence, labels: Sequence[str], placements,
              d: int, distinguished=(), params=None) -> Construction:
    """placements: (a, b, gadget, tag); gadget pair is moved onto rays (frame[a], frame[b])."""
    vecs = [pad(mp_vec(v), d) for v in frame]
    labels = list(labels)
    record = []
    for a, b, gadget, tag in placements:
        gv = [pad(mp_vec(v), d) for v in gadget.vectors.vectors]
        glabels = list(gadget.graph.labels)
        for k in range(gadget.vectors.d, d):  # lift to dimension d
            gv.append([S.to_mp(Fraction(1 if i == k else 0)) for i in range(d)])
            glabels.append(f"e{k + 1}")
        moved = place(gv, *gadget.pair, vecs[a], vecs[b])
        vecs += moved
        labels += [f"{tag}:{lab}" for lab in glabels]
        record.append([labels[a], labels[b], gadget.name, gadget.params.get("overlap",
                      gadget.params.get("target_overlap", ""))])
    params = dict(params or {})
    params["placements"] = record
    return realize(name, [approx_vec(v) for v in vecs], labels, distinguished, params, d)


def _g0_frame(d: int):
    """Standard basis and the all-ones center (overlap 1/sqrt(d) with each basis vector)."""
    return [_basis(d, k) for k in range(d)], (Fraction(1),) * d


def build_g0(d: int = 3, mode: str = "virtual") -> Construction:
    """A basis plus a center that is tied to every basis vector by a gadget.

    One basis vector must take the value 1, so the center is forced to 0.
    """
    _check_mode(mode)
    if d < 3:
        raise ValueError("G0 needs d >= 3")
    labels = [f"b{k}" for k in range(1, d + 1)] + ["c"]
    edges = [(i, j) for i in range(d) for j in range(i + 1, d)]
    c = d
    if mode == "virtual":
        o = fmt(S.sqrt(Fraction(1, d)))
        return _virtual("g0", labels, edges,
                        [(c, k, f"gadget at overlap {o}") for k in range(d)], d, (c,), {"d": d})
    basis, center = _g0_frame(d)
    o = S.sqrt(Fraction(1, d))
    gad = plain_gadget(o)
    return _expanded("g0", basis + [center], labels,
                     [(c, k, gad, f"g{k + 1}") for k in range(d)], d, (c,), {"d": d})


def _g0_copy(center_axis: int, perm):
    """Vectors of a d=3 G0 whose center is e_{center_axis}, basis rows of the Cayley matrix
    with coordinates permuted by ``perm``."""
    rows = [tuple(r[perm[i]] for i in range(3)) for r in _CAYLEY]
    return rows, _basis(3, center_axis)


# coordinate permutations sending axis 0 to axis 0, 1, 2
_PERMS = ((0, 1, 2), (1, 0, 2), (1, 2, 0))


def _center_assembly(name: str, copies: int, extra_top: bool, mode: str) -> Construction:
    """``copies`` G0 copies with centers e1, e2, (e3); optionally the top vertex e3."""
    _check_mode(mode)
    labels, edges, frame, places = [], [], [], []
    centers = []
    for j in range(copies):
        rows, center = _g0_copy(j, _PERMS[j])
        base = len(labels)
        labels += [f"b{k}.{j + 1}" for k in range(1, 4)] + [f"c{j + 1}"]
        frame += rows + [center]
        edges += [(base, base + 1), (base, base + 2), (base + 1, base + 2)]
        cidx = base + 3
        centers.append(cidx)
        for k in range(3):
            places.append((cidx, base + k, f"g{j + 1}.{k + 1}"))
    if extra_top:
        labels.append("t")
        frame.append(_basis(3, 2))
        centers.append(len(labels) - 1)
    # centers (and top) are mutually orthogonal coordinate axes
    edges += [(a, b) for i, a in enumerate(centers) for b in centers[i + 1:]]
    dist = (len(labels) - 1,) if extra_top else ()
    if mode == "virtual":
        vp = [(a, b, f"gadget at overlap {fmt(overlap(frame[a], frame[b]))}")
              for a, b, _ in places]
        return _virtual(name, labels, edges, vp, 3, dist)
    ep = [(a, b, plain_gadget(overlap(frame[a], frame[b])), tag) for a, b, tag in places]
    return _expanded(name, frame, labels, ep, 3, dist)


def build_g1(mode: str = "virtual") -> Construction:
    """Two G0 copies with orthogonal centers; the third basis vector t is forced to 1."""
    return _center_assembly("g1", 2, True, mode)


def build_ks1(mode: str = "virtual") -> Construction:
    """Three G0 copies whose centers form a basis: no valid coloring."""
    return _center_assembly("ks1", 3, False, mode)


def build_ks2(mode: str = "virtual") -> Construction:
    """Two bases with a gadget between every cross pair: no valid coloring."""
    _check_mode(mode)
    frame = [_basis(3, k) for k in range(3)] + list(_CAYLEY)
    labels = ["a1", "a2", "a3", "b1", "b2", "b3"]
    edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    pairs = [(i, 3 + j) for i in range(3) for j in range(3)]
    if mode == "virtual":
        vp = [(a, b, f"gadget at overlap {fmt(overlap(frame[a], frame[b]))}") for a, b in pairs]
        return _virtual("ks2", labels, edges, vp, 3)
    ep = [(a, b, plain_gadget(overlap(frame[a], frame[b])), f"g{labels[a]}{labels[b]}")
          for a, b in pairs]
    return _expanded("ks2", frame, labels, ep, 3)


def si_inequality(d: int) -> dict:
    """Noncontextual bound and quantum value of sum_i f(u_i) over a simplex frame."""
    return {"terms": [f"u{i}" for i in range(1, d + 2)], "classical_bound": "1",
            "quantum_value": str(Fraction(d + 1, d))}


def build_si_simplex(d: int, mode: str = "virtual") -> Construction:
    """d+1 simplex vectors pairwise joined by gadgets at overlap 1/d.

    At most one of them can take the value 1, while every state gives
    sum_i |<psi|u_i>|^2 = (d+1)/d.
    """
    _check_mode(mode)
    if d < 3:
        raise ValueError("the simplex set needs d >= 3")
    labels = [f"u{i}" for i in range(1, d + 2)]
    pairs = [(i, j) for i in range(d + 1) for j in range(i + 1, d + 1)]
    params = {"d": d, "inequality": si_inequality(d)}
    o = Fraction(1, d)
    if mode == "virtual":
        return _virtual("si-simplex", labels, [], [(i, j, f"gadget at overlap {o}")
                                                   for i, j in pairs],
                        d, tuple(range(d + 1)), params)
    frame = [list(v) for v in simplex_frame(d).vectors]
    gad = plain_gadget(o)
    return _expanded("si-simplex", frame, labels,
                     [(i, j, gad, f"g{i + 1}{j + 1}") for i, j in pairs], d,
                     tuple(range(d + 1)), params)


def pitowsky_frame(o) -> list:
    """v1..v5: v1, v2 at overlap o, v3 normal to their plane, v4 _|_ v1 and v5 _|_ v2 in it."""
    o = S.as_scalar(o)
    s = S.sqrt(1 - o * o)
    return [(1, 0, 0), (o, s, 0), (0, 0, 1), (0, 1, 0), (-s, o, 0)]


def build_pitowsky(o, mode: str = "virtual") -> Construction:
    """Two bases (v1,v3,v4), (v2,v3,v5) plus extended gadgets on (v1,v2), (v1,v5), (v2,v4).

    Any [0,1]-assignment giving v1 or v2 the value 1 is infeasible, so both
    must be 0 whenever their values are definite.
    """
    _check_mode(mode)
    o = S.as_scalar(o)
    if S.sign(o) <= 0 or S.sign(o - 1) >= 0:
        raise ValueError("overlap must lie in (0, 1)")
    frame = pitowsky_frame(o)
    labels = ["v1", "v2", "v3", "v4", "v5"]
    edges = [(0, 2), (0, 3), (2, 3), (1, 2), (1, 4), (2, 4)]
    pairs = [(0, 1), (0, 4), (1, 3)]
    params = {"overlap": fmt(o)}
    if mode == "virtual":
        vp = [(a, b, f"extended gadget at overlap {fmt(overlap(frame[a], frame[b]))}")
              for a, b in pairs]
        return _virtual("pitowsky", labels, edges, vp, 3, (0, 1), params)
    ep = []
    for a, b in pairs:
        gad = extended_gadget(overlap(frame[a], frame[b]))
        ep.append((a, b, gad, f"g{a + 1}{b + 1}"))
    params["levels"] = [gad.params["k"] for _, _, gad, _ in ep]
    return _expanded("pitowsky", frame, labels, ep, 3, (0, 1), params)


__all__ = [
    "build_g0", "build_g1", "build_ks1", "build_ks2", "build_pitowsky", "build_si_simplex",
    "extended_gadget", "pitowsky_frame", "plain_gadget", "si_inequality",
]
