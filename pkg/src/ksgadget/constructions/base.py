"""Shared plumbing for the builders: the Construction record, tight-tolerance
realization of vector lists, and orthogonal placement of gadgets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .. import scalars as S
from ..graph import Graph
from ..scalars import Approx, ctx, to_mp
from ..vectors import VectorSet, faithful_version

# Builders work at 128 bits, so rays that are orthogonal by construction have
# inner products around 1e-35. A tolerance far below the 1e-9 default keeps
# small-but-genuine overlaps (e.g. gadgets near overlap 0.1) from turning
# into spurious edges.
CONSTRUCTION_TOL = 1e-20

MODES = ("expanded", "virtual")


@dataclass(frozen=True)
class Construction:
    name: str
    graph: Graph
    vectors: Optional[VectorSet] = None
    distinguished: tuple = ()
    mode: str = "expanded"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "expanded" and self.vectors is None:
            raise ValueError("expanded constructions need vectors")
        if self.vectors is not None and len(self.vectors) != self.graph.n:
            raise ValueError("vector count does not match the graph")

    @property
    def pair(self) -> tuple:
        if len(self.distinguished) != 2:
            raise ValueError(f"{self.name} has no distinguished pair")
        return tuple(self.distinguished)

    def to_json(self) -> dict:
        d = {
            "construction": self.name,
            "mode": self.mode,
            "graph": self.graph.to_json(),
            "distinguished": list(self.distinguished),
            "params": self.params,
        }
        if self.vectors is not None:
            d["vectors"] = self.vectors.to_json()
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Construction":
        vecs = VectorSet.from_json(d["vectors"]) if d.get("vectors") is not None else None
        return cls(d["construction"], Graph.from_json(d["graph"]), vecs,
                   tuple(d.get("distinguished", ())), d.get("mode", "expanded"),
                   dict(d.get("params", {})))


def fmt(x) -> str:
    """Parameter value as a string: exact form when available."""
    x = S.as_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, S.Quad):
        return str(x)
    return ctx.nstr(x.v, 30)


def realize(name: str, vectors: Sequence, labels: Sequence[str], distinguished: Sequence[int],
            params: dict, d: int, tol: float = CONSTRUCTION_TOL) -> Construction:
    """Faithful version of a vector list, with labels and distinguished indices remapped."""
    V = VectorSet(d, tuple(tuple(v) for v in vectors))
    W, g, merge = faithful_version(V, tol, list(labels))
    params = dict(params)
    params.setdefault("tol", repr(tol))
    renamed = [[labels[i], g.labels[merge[i]]] for i in range(len(V))
               if labels[i] != g.labels[merge[i]]]
    if renamed:
        params["merged"] = renamed
    return Construction(name, g, W, tuple(merge[i] for i in distinguished), "expanded", params)


# real orthogonal geometry in mp

def mp_vec(v) -> list:
    return [to_mp(x) for x in v]


def dot(u, v):
    return ctx.fsum(a * b for a, b in zip(u, v))


def unit(v) -> list:
    n = ctx.sqrt(dot(v, v))
    return [x / n for x in v]


def axpy(a, x, y) -> list:
    """a*x + y"""
    return [a * xi + yi for xi, yi in zip(x, y)]


def complete_frame(vs: Sequence, d: int) -> list:
    """Extend orthonormal vectors to an orthonormal basis of R^d (Gram-Schmidt
    over the standard basis, taking the largest residual each time)."""
    frame = [list(v) for v in vs]
    while len(frame) < d:
        best = None
        for k in range(d):
            e = [ctx.mpf(1 if i == k else 0) for i in range(d)]
            for f in frame:
                e = axpy(-dot(f, e), f, e)
            n = dot(e, e)
            if best is None or n > best[0]:
                best = (n, e)
        frame.append(unit(best[1]))
    return frame


def pair_frame(a, b, d: int) -> list:
    """Orthonormal frame whose first vector is a and whose span of the first
    two contains b."""
    ua = unit(mp_vec(a))
    ub = unit(mp_vec(b))
    r = axpy(-dot(ua, ub), ua, ub)
    return complete_frame([ua, unit(r)], d)


def frame_map(src: Sequence, dst: Sequence):
    """Linear map sending src[k] to dst[k] (both orthonormal frames)."""
    d = len(src)
    M = [[ctx.fsum(dst[k][i] * src[k][j] for k in range(d)) for j in range(d)]
         for i in range(d)]
    return M


def apply(M, v) -> list:
    return [ctx.fsum(r[j] * v[j] for j in range(len(v))) for r in M]


def place(vectors: Sequence, i1: int, i2: int, a, b, tol: float = 1e-25) -> list:
    """Move a realization rigidly so vectors[i1] lands on ray a and vectors[i2] on ray b.

    The overlaps must agree; the sign of b is adjusted to match the
    realization (rays are sign-free).
    """
    V = [mp_vec(v) for v in vectors]
    d = len(V[0])
    s1, s2 = unit(V[i1]), unit(V[i2])
    a, b = unit(mp_vec(a)), unit(mp_vec(b))
    cs, cd = dot(s1, s2), dot(a, b)
    if abs(abs(cs) - abs(cd)) > tol:
        raise ValueError(f"overlap mismatch: gadget {ctx.nstr(abs(cs), 15)} "
                         f"vs target {ctx.nstr(abs(cd), 15)}")
    if (cs < 0) != (cd < 0):
        b = [-x for x in b]
    M = frame_map(pair_frame(s1, s2, d), pair_frame(a, b, d))
    return [apply(M, v) for v in V]


def approx_vec(v) -> tuple:
    return tuple(Approx(x) for x in v)


def pad(v, d: int) -> list:
    v = list(v)
    return v + [ctx.mpf(0)] * (d - len(v))
