"""From graph coloring to {0,1}-coloring.

Every vertex v of G becomes a clique v_1..v_w of H (w = clique number of G)
and every edge (u, v) becomes, for each index i, a gadget between u_i and v_i.
Then G is w-colorable exactly when H is {0,1}-colorable: the color of v is
the index i with f(v_i) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import colorer
from .constructions.assemblies import plain_gadget
from .constructions.base import Construction, approx_vec, mp_vec, pad, place, realize
from .graph import Graph, maximal_cliques
from .scalars import ctx
from .vectors import overlap

MODES = ("virtual", "expanded")


@dataclass(frozen=True)
class Placement:
    edge: tuple      # source edge (u, v)
    index: int       # i in 1..w
    gadget: str      # instance id, shared by all placements at the same overlap
    pair: tuple      # distinguished vertices (u_i, v_i) in H


@dataclass(frozen=True)
class Reduction:
    source: Graph
    target: Graph
    vertex_map: dict                 # source vertex -> tuple of w vertices of H
    placements: tuple
    mode: str
    omega: int
    construction: Optional[Construction] = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "mode": self.mode, "omega": self.omega,
            "source": self.source.to_json(), "target": self.target.to_json(),
            "vertex_map": {str(v): list(c) for v, c in sorted(self.vertex_map.items())},
            "placements": [{"edge": list(p.edge), "index": p.index, "gadget": p.gadget,
                            "pair": list(p.pair)} for p in self.placements],
        }


def size_bound(g: Graph, omega: int, gadget_size: int) -> int:
    """|V(H)| <= w|V| + w|E|(gadget_size - 2): shared endpoints are not recounted."""
    return omega * g.n + omega * len(g.edges) * max(gadget_size - 2, 0)


def circulant_vector(omega: int, seed: int) -> list:
    """First column x of a real orthogonal circulant matrix.

    The eigenvalues are 1 and conjugate pairs exp(+-i phi_k) with phases
    that depend on ``seed`` through the golden ratio, so different seeds give
    different, generically positioned vectors. The cyclic shifts of x form an
    orthonormal basis.
    """
    golden = (ctx.sqrt(5) - 1) / 2
    lam = [ctx.mpc(1)] * omega
    for k in range(1, (omega + 1) // 2):
        phi = 2 * ctx.pi * ctx.frac((seed + 1) * (k + 1) * golden + k * golden ** 2)
        lam[k] = ctx.expj(phi)
        lam[omega - k] = ctx.expj(-phi)
    if omega % 2 == 0:
        lam[omega // 2] = ctx.mpc(-1) if seed % 2 else ctx.mpc(1)
    return [ctx.re(ctx.fsum(lam[k] * ctx.expj(2 * ctx.pi * j * k / omega) for k in range(omega))
                   / omega) for j in range(omega)]


def shift(x: list, i: int) -> list:
    """Pi_i: |j> -> |j+i> (mod w)."""
    w = len(x)
    return [x[(j - i) % w] for j in range(w)]


def reduce(g: Graph, mode: str = "virtual") -> Reduction:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    omega = maximal_cliques(g).omega
    if omega < 3:
        raise ValueError(f"the reduction needs clique number >= 3, got {omega}")
    n = g.n
    vertex_map = {v: tuple(v * omega + i for i in range(omega)) for v in range(n)}
    labels = [f"{g.label(v)}_{i + 1}" for v in range(n) for i in range(omega)]
    clique_edges = [(c[a], c[b]) for c in vertex_map.values()
                    for a in range(omega) for b in range(a + 1, omega)]
    edges = sorted(g.edges)
    if mode == "virtual":
        places = tuple(Placement(e, i + 1, "exclusive", (vertex_map[e[0]][i], vertex_map[e[1]][i]))
                       for e in edges for i in range(omega))
        h = Graph(n * omega, frozenset(clique_edges),
                  frozenset(tuple(sorted(p.pair)) for p in places), tuple(labels), omega)
        if h.n > size_bound(g, omega, 2):
            raise AssertionError("virtual reduction exceeds its size bound")
        return Reduction(g, h, vertex_map, places, mode, omega)
    return _expanded(g, omega, vertex_map, labels, edges)


def _expanded(g, omega, vertex_map, labels, edges) -> Reduction:
    xs = [circulant_vector(omega, v) for v in range(g.n)]
    vecs = [shift(xs[v], i) for v in range(g.n) for i in range(omega)]
    labels = list(labels)
    raw = []
    biggest = 2
    for e in edges:
        u, v = e
        o = overlap(approx_vec(xs[u]), approx_vec(xs[v]))
        gad = plain_gadget(o)
        gid = f"gadget-pair@{gad.params['overlap'][:14]}"
        biggest = max(biggest, gad.graph.n + omega - 3)
        gv = [pad(mp_vec(x), omega) for x in gad.vectors.vectors]
        glabels = list(gad.graph.labels)
        for k in range(gad.vectors.d, omega):
            gv.append([ctx.mpf(1 if j == k else 0) for j in range(omega)])
            glabels.append(f"e{k + 1}")
        for i in range(omega):
            a, b = vertex_map[u][i], vertex_map[v][i]
            vecs += place(gv, *gad.pair, vecs[a], vecs[b])
            labels += [f"{g.label(u)}{g.label(v)}_{i + 1}:{lab}" for lab in glabels]
            raw.append((e, i + 1, gid, (a, b)))
    con = realize("reduction", [approx_vec(x) for x in vecs], labels,
                  tuple(range(g.n * omega)), {"omega": omega}, omega)
    merged = con.distinguished
    if len(set(merged)) != g.n * omega:
        raise AssertionError("clique vertices collided; the representation is not faithful")
    vmap = {v: tuple(merged[c] for c in cl) for v, cl in vertex_map.items()}
    places = tuple(Placement(e, i, gid, (merged[a], merged[b])) for e, i, gid, (a, b) in raw)
    h = con.graph.with_dim(omega)
    if h.n > size_bound(g, omega, biggest):
        raise AssertionError("expanded reduction exceeds its size bound")
    return Reduction(g, h, vmap, places, "expanded", omega, con)


# proper coloring oracle, independent of the {0,1} solver

def k_colorable(g: Graph, k: int, budget: Optional[int] = None):
    """(True, colors) for a proper k-coloring, (False, None) if none exists.

    Plain backtracking: lowest uncolored vertex first, lowest color first.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    budget = colorer.default_budget() if budget is None else budget
    colors = [-1] * g.n
    nodes = 0

    def ok(v, c):
        return all(colors[w] != c for w in g.neighbors(v))

    v = 0
    choice = [0] * (g.n + 1)
    while True:
        if v == g.n:
            return True, tuple(c + 1 for c in colors)
        if v < 0:
            return False, None
        c = choice[v]
        while c < k and not ok(v, c):
            c += 1
        nodes += 1
        if nodes > budget:
            raise colorer.SearchBudgetExceeded(colorer.SearchStats(nodes=nodes))
        if c < k:
            colors[v] = c
            choice[v] = c + 1
            v += 1
            if v < g.n:
                choice[v] = 0
        else:
            colors[v] = -1
            choice[v] = 0
            v -= 1
            if v >= 0:
                colors[v] = -1


def lift_coloring(r: Reduction, colors) -> dict:
    """c'(v_i) = 1 iff i = c(v), as pins on the clique vertices of H."""
    pins = {}
    for v, cl in r.vertex_map.items():
        for i, h in enumerate(cl, start=1):
            pins[h] = 1 if colors[v] == i else 0
    return pins


def decode_coloring(r: Reduction, f) -> tuple:
    """c(v) = the index i with f(v_i) = 1."""
    out = []
    for v in range(r.source.n):
        ones = [i for i, h in enumerate(r.vertex_map[v], start=1) if f[h] == 1]
        if len(ones) != 1:
            raise AssertionError(f"vertex {v} has {len(ones)} ones in its clique")
        out.append(ones[0])
    return tuple(out)


@dataclass(frozen=True)
class Equivalence:
    holds: bool
    source_colorable: bool
    target_colorable: bool
    detail: str

    def __bool__(self):
        return self.holds


def verify_equivalence(g: Graph, r: Reduction, budget: Optional[int] = None) -> Equivalence:
    if r.source != g:
        raise ValueError("reduction was produced from a different graph")
    src, colors = k_colorable(g, r.omega, budget)
    res = colorer.solve(r.target, budget=budget)
    tgt = isinstance(res, colorer.Coloring)
    if src != tgt:
        return Equivalence(False, src, tgt, "colorability differs")
    if not src:
        return Equivalence(True, False, False, "both sides uncolorable")
    lifted = colorer.solve(r.target, lift_coloring(r, colors), budget)
    if not isinstance(lifted, colorer.Coloring):
        return Equivalence(False, True, True, "lifted coloring does not extend to H")
    if colorer.validate(r.target, lifted):
        return Equivalence(False, True, True, "lifted coloring is invalid")
    back = decode_coloring(r, res.values)
    if any(back[a] == back[b] for a, b in g.edges):
        return Equivalence(False, True, True, "decoded coloring of G is improper")
    return Equivalence(True, True, True, "lifted and decoded colorings both valid")
