"""Real vector sets, Gram matrices and orthogonality graphs.

Entries are scalars from :mod:`ksgadget.scalars`. Inner products are exact
when the entries allow it and fall back to 128-bit floats otherwise.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import scalars as S
from .graph import Graph
from .scalars import Approx, ctx, to_mp

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class VectorSet:
    d: int
    vectors: tuple
    ray_canonical: bool = False

    def __post_init__(self):
        vecs = tuple(tuple(S.as_scalar(x) for x in v) for v in self.vectors)
        for i, v in enumerate(vecs):
            if len(v) != self.d:
                raise ValueError(f"vector {i} has length {len(v)}, expected {self.d}")
            if all(S.is_zero(x) for x in v):
                raise ValueError(f"vector {i} is zero")
        object.__setattr__(self, "vectors", vecs)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]

    @property
    def exact(self) -> bool:
        return all(S.is_exact(x) for v in self.vectors for x in v)

    def to_json(self) -> dict:
        return {"d": self.d, "vectors": [[S.to_json(x) for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, obj) -> "VectorSet":
        if not isinstance(obj, dict) or "d" not in obj or "vectors" not in obj:
            raise ValueError("vector JSON needs 'd' and 'vectors'")
        return cls(int(obj["d"]), tuple(tuple(S.from_json(x) for x in v)
                                        for v in obj["vectors"]))

    def mp(self) -> list:
        return [[to_mp(x) for x in v] for v in self.vectors]


def inner(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    total = Fraction(0)
    for a, b in zip(u, v):
        total = total + S.as_scalar(a) * S.as_scalar(b)
    return total


def norm2(u: Sequence):
    return inner(u, u)


def normalized_inner(u: Sequence, v: Sequence):
    """<u|v> / (|u| |v|), exact where the scalar tower permits."""
    num = inner(u, v)
    den = norm2(u) * norm2(v)
    if S.is_zero(num):
        return Fraction(0)
    root = S.sqrt(den) if isinstance(den, Fraction) else Approx(ctx.sqrt(to_mp(den)))
    return num / root


def overlap(u: Sequence, v: Sequence):
    """|<u|v>| / (|u| |v|)."""
    return abs(normalized_inner(u, v))


def gram(V: VectorSet) -> list:
    """Normalized Gram matrix (unit diagonal)."""
    n = len(V)
    G = [[None] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = Fraction(1)
        for j in range(i + 1, n):
            G[i][j] = G[j][i] = normalized_inner(V[i], V[j])
    return G


def _float_unit(V: VectorSet) -> np.ndarray:
    M = np.array([[float(to_mp(x)) for x in v] for v in V.vectors], dtype=float)
    return M / np.linalg.norm(M, axis=1)[:, None]


def _mp_units(V: VectorSet):
    out = []
    for v in V.mp():
        nrm = ctx.sqrt(sum(x * x for x in v))
        out.append([x / nrm for x in v])
    return out


def _orthogonal(u, v, tol, mu=None, mv=None) -> bool:
    dot = inner(u, v)
    if S.is_exact(dot):
        if S.is_zero(dot):
            return True
        if tol == 0:
            return False
        val = to_mp(dot) ** 2
        return val <= ctx.mpf(tol) ** 2 * to_mp(norm2(u)) * to_mp(norm2(v))
    if tol == 0:
        raise ValueError("exact comparison requested but the inner product is inexact")
    c = abs(sum(a * b for a, b in zip(mu, mv)))
    return c <= tol


def orthogonal_pairs(V: VectorSet, tol: float = DEFAULT_TOL) -> list:
    n = len(V)
    if n < 2:
        return []
    out = []
    # float64 prefilter, then a 128-bit recheck of the survivors
    U = _float_unit(V)
    C = np.abs(U @ U.T)
    cut = max(float(tol), 0.0) + 1e-6
    cand = np.argwhere(np.triu(C <= cut, 1))
    units = _mp_units(V) if not V.exact else None
    for i, j in sorted(map(tuple, cand.tolist())):
        mu = units[i] if units else None
        mv = units[j] if units else None
        if units is None and not S.is_exact(inner(V[i], V[j])):
            units = _mp_units(V)
            mu, mv = units[i], units[j]
        if _orthogonal(V[i], V[j], tol, mu, mv):
            out.append((i, j))
    return out


def orthogonality_graph(V: VectorSet, tol: float = DEFAULT_TOL,
                        labels: Optional[Sequence[str]] = None,
                        dim: Optional[int] = None) -> Graph:
    """Edge iff |<u|v>| <= tol |u||v| (exactly zero when tol == 0)."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    return Graph(len(V), frozenset(orthogonal_pairs(V, tol)),
                 labels=tuple(labels) if labels is not None else None, dim=dim)


# rays

def canonical_ray(v: Sequence) -> tuple:
    """Scale so the first nonzero entry is positive.

    Exact rational vectors are reduced to coprime integers. Other vectors are
    normalized to unit length.
    """
    v = [S.as_scalar(x) for x in v]
    lead = next(x for x in v if not S.is_zero(x))
    if all(isinstance(x, Fraction) for x in v):
        den = 1
        for x in v:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = math.gcd(g, abs(x))
        s = 1 if lead > 0 else -1
        return tuple(Fraction(s * x // g) for x in ints)
    m = [to_mp(x) for x in v]
    nrm = ctx.sqrt(sum(x * x for x in m))
    if S.sign(lead) < 0:
        nrm = -nrm
    return tuple(Approx(x / nrm) for x in m)


def same_ray(u: Sequence, v: Sequence, tol: float = DEFAULT_TOL) -> bool:
    u = [S.as_scalar(x) for x in u]
    v = [S.as_scalar(x) for x in v]
    if all(S.is_exact(x) for x in u + v):
        minors = [u[i] * v[j] - u[j] * v[i] for i, j in itertools.combinations(range(len(u)), 2)]
        if all(S.is_exact(m) for m in minors):
            return all(S.is_zero(m) for m in minors)
    cu, cv = canonical_ray(u), canonical_ray(v)
    if not all(isinstance(x, Approx) for x in cu):
        cu = canonical_ray([to_mp(x) for x in u])
    if not all(isinstance(x, Approx) for x in cv):
        cv = canonical_ray([to_mp(x) for x in v])
    return all(abs(a.v - b.v) <= tol for a, b in zip(cu, cv))


@dataclass(frozen=True)
class FaithfulVerdict:
    faithful: bool
    missing_edges: tuple      # adjacent in g but not orthogonal
    extra_orthogonal: tuple   # orthogonal but not adjacent
    duplicate_rays: tuple

    def __bool__(self):
        return self.faithful


def _ray_groups(V: VectorSet, tol):
    """Representatives of distinct rays (first occurrence) and index -> group."""
    reps: list[int] = []
    merge = {}
    U = _float_unit(V)
    for i in range(len(V)):
        found = None
        if reps:
            close = np.abs(U[reps] @ U[i]) > 1 - 1e-6
            for k in np.flatnonzero(close):
                if same_ray(V[i], V[reps[k]], tol):
                    found = int(k)
                    break
        if found is None:
            reps.append(i)
            merge[i] = len(reps) - 1
        else:
            merge[i] = found
    return reps, merge


def check_faithful(V: VectorSet, g: Graph, tol: float = DEFAULT_TOL) -> FaithfulVerdict:
    if len(V) != g.n:
        raise ValueError(f"{len(V)} vectors for a graph on {g.n} vertices")
    orth = set(orthogonal_pairs(V, tol))
    missing = tuple(sorted(g.edges - orth))
    extra = tuple(sorted(orth - g.edges))
    reps, merge = _ray_groups(V, tol)
    dups = tuple(sorted((reps[merge[i]], i) for i in range(len(V)) if reps[merge[i]] != i))
    return FaithfulVerdict(not (missing or extra or dups), missing, extra, dups)


def faithful_version(V: VectorSet, tol: float = DEFAULT_TOL,
                     labels: Optional[Sequence[str]] = None,
                     dim: Optional[int] = None):
    """Merge identical rays and return (vectors, orthogonality graph, merge map)."""
    reps, merge = _ray_groups(V, tol)
    W = VectorSet(V.d, tuple(V[i] for i in reps), V.ray_canonical)
    lab = [labels[i] for i in reps] if labels is not None else None
    return W, orthogonality_graph(W, tol, lab, dim), merge


# frames and maps

def simplex_frame(d: int) -> VectorSet:
    """d+1 unit vectors in R^d with pairwise inner product -1/d."""
    if d < 2:
        raise ValueError("simplex frame needs d >= 2")
    # centred standard basis of R^{d+1}, expressed in a Helmert basis of
    # the hyperplane orthogonal to (1,...,1)
    helmert = []
    for k in range(1, d + 1):
        row = [ctx.mpf(1)] * k + [ctx.mpf(-k)] + [ctx.mpf(0)] * (d - k)
        nrm = ctx.sqrt(k * (k + 1))
        helmert.append([x / nrm for x in row])
    scale = ctx.sqrt(ctx.mpf(d + 1) / d)
    vecs = []
    for i in range(d + 1):
        vecs.append(tuple(Approx(scale * helmert[k][i]) for k in range(d)))
    return VectorSet(d, tuple(vecs), True)


def frame_residual(V: VectorSet) -> float:
    """Spectral-norm distance of sum |u><u| from ((d+1)/d) I."""
    d = V.d
    M = ctx.zeros(d, d)
    for v in _mp_units(V):
        for i in range(d):
            for j in range(d):
                M[i, j] += v[i] * v[j]
    target = ctx.mpf(len(V)) / d
    for i in range(d):
        M[i, i] -= target
    return float(max(abs(x) for x in ctx.eigsy(M)[0]))


def apply_linear_map(V: VectorSet, M: Sequence[Sequence]) -> VectorSet:
    rows = [list(r) for r in M]
    if len(rows) != V.d or any(len(r) != V.d for r in rows):
        raise ValueError("map must be a square matrix of the set's dimension")
    out = []
    for v in V.vectors:
        out.append(tuple(inner(r, v) for r in rows))
    return VectorSet(V.d, tuple(out))


def embed_dim(V: VectorSet, d2: int, complete: bool = False) -> VectorSet:
    """Zero-pad to dimension d2; optionally append the basis vectors e_{d+1..d2}."""
    if d2 < V.d:
        raise ValueError(f"cannot embed dimension {V.d} into {d2}")
    pad = (Fraction(0),) * (d2 - V.d)
    vecs = [tuple(v) + pad for v in V.vectors]
    if complete:
        for k in range(V.d, d2):
            vecs.append(tuple(Fraction(1 if i == k else 0) for i in range(d2)))
    return VectorSet(d2, tuple(vecs))


def lift_parameter(current, target):
    """x with current / sqrt(1 + x^2) = target."""
    r = S.as_scalar(current) / S.as_scalar(target)
    r2 = r * r - 1
    if S.sign(r2) < 0:
        raise ValueError("target overlap exceeds the current overlap")
    return S.sqrt(r2)


def pad_overlap_lift(V: VectorSet, i1: int, i2: int, target) -> VectorSet:
    """Lower the overlap of (i1, i2) to ``target`` at the cost of one dimension.

    Every vector gets a trailing zero, vector i1 becomes its unit version plus
    x times the new axis, and the new axis itself is appended as vector n.
    """
    cur = overlap(V[i1], V[i2])
    t = S.as_scalar(target)
    if S.sign(t) <= 0 or S.sign(t - cur) > 0:
        raise ValueError(f"target overlap must lie in (0, {float(to_mp(cur)):.12g}]")
    x = lift_parameter(cur, t)
    d2 = V.d + 1
    vecs = [tuple(v) + (Fraction(0),) for v in V.vectors]
    n1 = norm2(V[i1])
    root = S.sqrt(n1) if isinstance(n1, Fraction) else Approx(ctx.sqrt(to_mp(n1)))
    vecs[i1] = tuple(x_ / root for x_ in V[i1]) + (x,)
    vecs.append(tuple(Fraction(1 if k == V.d else 0) for k in range(d2)))
    return VectorSet(d2, tuple(vecs))
