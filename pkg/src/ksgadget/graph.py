"""Finite simple graphs, clique enumeration and forbidden-subgraph search."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Pair = tuple[int, int]


def _norm_pairs(pairs: Iterable[Sequence[int]], n: int, what: str) -> frozenset[Pair]:
    out = set()
    for p in pairs:
        if len(p) != 2:
            raise ValueError(f"{what} entry {list(p)!r} is not a pair")
        i, j = int(p[0]), int(p[1])
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"{what} ({i},{j}) out of range for n={n}")
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``exclusive`` holds "virtual edges": pairs that may not both take the
    value 1 but that never take part in cliques. ``dim``, when set, is the
    dimension of the ambient space; maximum cliques are then the cliques of
    exactly that size (there may be none).
    """

    n: int
    edges: frozenset = frozenset()
    exclusive: frozenset = frozenset()
    labels: Optional[tuple] = None
    dim: Optional[int] = None
    _adj: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        edges = _norm_pairs(self.edges, self.n, "edge")
        excl = _norm_pairs(self.exclusive, self.n, "exclusive pair")
        if edges & excl:
            raise ValueError(f"pairs both edge and exclusive: {sorted(edges & excl)}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise ValueError("label count does not match n")
            object.__setattr__(self, "labels", labels)
        if self.dim is not None and self.dim < 1:
            raise ValueError("dim must be positive")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "exclusive", excl)
        adj = [set() for _ in range(self.n)]
        for i, j in edges:
            adj[i].add(j)
            adj[j].add(i)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def with_dim(self, dim: Optional[int]) -> "Graph":
        return Graph(self.n, self.edges, self.exclusive, self.labels, dim)

    def to_json(self) -> dict:
        d = {
            "n": self.n,
            "edges": [list(e) for e in sorted(self.edges)],
            "exclusive": [list(e) for e in sorted(self.exclusive)],
        }
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.dim is not None:
            d["dim"] = self.dim
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Graph":
        if not isinstance(d, dict) or "n" not in d:
            raise ValueError("graph JSON needs an 'n' field")
        for key in ("edges", "exclusive"):
            for p in d.get(key, []):
                if len(p) == 2 and p[0] > p[1]:
                    raise ValueError(f"{key} entry {p} must be written with i<j")
        return cls(
            int(d["n"]),
            frozenset(tuple(p) for p in d.get("edges", [])),
            frozenset(tuple(p) for p in d.get("exclusive", [])),
            tuple(d["labels"]) if d.get("labels") is not None else None,
            d.get("dim"),
        )


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(canonical_json(g.to_json()).encode()).hexdigest()


@dataclass(frozen=True)
class CliqueReport:
    maximal_cliques: tuple
    omega: int


def _bron_kerbosch(adj: Sequence[frozenset], n: int) -> list[tuple]:
    out: list[tuple] = []
    # explicit stack of (R, P, X)
    stack = [((), frozenset(range(n)), frozenset())]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                out.append(tuple(sorted(r)))
            continue
        # pivot maximising |P ∩ N(u)|, ties to the lowest vertex
        pivot = min(p | x, key=lambda u: (-len(p & adj[u]), u))
        cand = sorted(p - adj[pivot])
        for v in cand:
            stack.append((r + (v,), p & adj[v], x & adj[v]))
            p = p - {v}
            x = x | {v}
    return out


def maximal_cliques(g: Graph) -> CliqueReport:
    """All maximal cliques over real edges, in lexicographic order."""
    if g.n == 0:
        return CliqueReport((), 0)
    cl = sorted(_bron_kerbosch(g._adj, g.n))
    return CliqueReport(tuple(cl), max(len(c) for c in cl))


def maximum_cliques(g: Graph, report: Optional[CliqueReport] = None) -> list[tuple]:
    """Cliques on which exactly one vertex must take the value 1.

    Without ``dim`` these are the cliques of size omega (every vertex when
    the graph is edgeless). With ``dim`` they are the cliques of size dim.
    """
    report = report or maximal_cliques(g)
    size = report.omega if g.dim is None else g.dim
    if g.dim is not None and report.omega > g.dim:
        raise ValueError(f"clique of size {report.omega} exceeds dim={g.dim}")
    return [c for c in report.maximal_cliques if len(c) == size]


def union_cliques(g: Graph) -> list[tuple]:
    """Maximal cliques of the graph whose edges are edges plus exclusive pairs."""
    h = Graph(g.n, g.edges | g.exclusive)
    return list(maximal_cliques(h).maximal_cliques)


def _relabel(g: Graph, keep: Sequence[int], edges: Iterable[Pair]):
    index = {v: i for i, v in enumerate(keep)}
    e = {(index[a], index[b]) for a, b in edges if a in index and b in index}
    x = {(index[a], index[b]) for a, b in g.exclusive if a in index and b in index}
    labels = tuple(g.label(v) for v in keep) if g.labels else None
    return Graph(len(keep), frozenset(e), frozenset(x), labels, g.dim), index


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, dict]:
    """Induced subgraph on ``vs`` plus the map old index -> new index."""
    keep = sorted(set(vs))
    for v in keep:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
    return _relabel(g, keep, g.edges)


def delete_vertex(g: Graph, v: int) -> tuple[Graph, dict]:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    return _relabel(g, [u for u in range(g.n) if u != v], g.edges)


def delete_edges(g: Graph, es: Iterable[Sequence[int]]) -> tuple[Graph, dict]:
    drop = _norm_pairs(es, g.n, "edge")
    missing = drop - g.edges
    if missing:
        raise IndexError(f"edges not in graph: {sorted(missing)}")
    return _relabel(g, list(range(g.n)), g.edges - drop)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    off = a.n
    edges = set(a.edges) | {(i + off, j + off) for i, j in b.edges}
    excl = set(a.exclusive) | {(i + off, j + off) for i, j in b.exclusive}
    labels = None
    if a.labels or b.labels:
        labels = tuple(a.label(v) for v in range(a.n)) + tuple(
            b.label(v) for v in range(b.n))
    dim = a.dim if a.dim == b.dim else None
    return Graph(a.n + b.n, frozenset(edges), frozenset(excl), labels, dim)


# forbidden subgraphs

def square_pattern(d: int) -> Graph:
    """Square plus d-3 mutually adjacent vertices joined to every square vertex."""
    if d < 3:
        raise ValueError(f"unsupported dimension {d}: forbidden patterns need d >= 3")
    extra = list(range(4, d + 1))
    edges = {(0, 1), (1, 2), (2, 3), (0, 3)}
    edges |= {(s, e) for s in range(4) for e in extra}
    edges |= {(a, b) for a, b in itertools.combinations(extra, 2)}
    return Graph(d + 1, frozenset(edges))


@dataclass(frozen=True)
class Embedding:
    square: tuple  # (a, b, c, d) in cyclic order
    apex: tuple    # the d-3 extra vertices
    edges: frozenset


def find_forbidden(g: Graph, d: int) -> list[Embedding]:
    """Every (not necessarily induced) copy of the dimension-d square pattern.

    Copies are identified by their edge sets, so automorphic images of the
    same copy are reported once.
    """
    if d < 3:
        raise ValueError(f"unsupported dimension {d}: forbidden patterns need d >= 3")
    adj = g._adj
    squares = {}
    for a, c in itertools.combinations(range(g.n), 2):
        common = sorted(adj[a] & adj[c])
        for b, e in itertools.combinations(common, 2):
            es = frozenset({(min(a, b), max(a, b)), (min(b, c), max(b, c)),
                            (min(c, e), max(c, e)), (min(a, e), max(a, e))})
            if es not in squares:
                squares[es] = (a, b, c, e)
    out = {}
    k = d - 3
    for es, sq in squares.items():
        common = set.intersection(*(set(adj[v]) for v in sq)) - set(sq)
        for apex in itertools.combinations(sorted(common), k):
            if all(y in adj[x] for x, y in itertools.combinations(apex, 2)):
                full = set(es)
                full |= {(min(s, t), max(s, t)) for s in sq for t in apex}
                full |= {(min(x, y), max(x, y)) for x, y in itertools.combinations(apex, 2)}
                full = frozenset(full)
                if full not in out:
                    out[full] = Embedding(sq, apex, full)
    return sorted(out.values(), key=lambda m: sorted(m.edges))
