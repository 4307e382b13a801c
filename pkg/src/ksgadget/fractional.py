"""[0,1]-assignments: exact LP over the clique polytope of a graph.

Constraints, all with 0/1 coefficients:

* sum over every maximal clique of (edges + exclusive pairs) <= 1; an
  isolated vertex is its own clique, which gives the box p_v <= 1,
* sum over every maximum clique of real edges == 1,
* optional pins p_v == value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from . import lp
from .graph import Graph, graph_hash, maximal_cliques, maximum_cliques, union_cliques


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible"
    optimum: Optional[Fraction]
    primal: Optional[tuple]
    certificate: Optional[lp.Farkas] = None
    cross_checked: bool = False

    def to_json(self, g: Optional[Graph] = None) -> dict:
        d = {"status": self.status,
             "optimum": None if self.optimum is None else str(self.optimum),
             "primal": None if self.primal is None else [str(v) for v in self.primal]}
        if self.certificate is not None:
            d["farkas"] = {"ub": list(self.certificate.y_ub),
                           "eq": list(self.certificate.y_eq)}
        if g is not None:
            d["graph_sha256"] = graph_hash(g)
        return d


@dataclass(frozen=True)
class Polytope:
    nvar: int
    A_ub: tuple
    b_ub: tuple
    A_eq: tuple
    b_eq: tuple


def polytope(g: Graph, fixed: Optional[Mapping[int, Fraction]] = None) -> Polytope:
    eq_cliques = maximum_cliques(g, maximal_cliques(g))
    eq_set = set(eq_cliques)
    A_ub = [{v: 1 for v in q} for q in union_cliques(g) if q not in eq_set]
    # vertices covered only by equality cliques still need p <= 1; they get it
    # from the equality itself, so nothing to add
    A_eq = [{v: 1 for v in q} for q in eq_cliques]
    b_eq = [Fraction(1)] * len(A_eq)
    for v, val in sorted((fixed or {}).items()):
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
        A_eq.append({v: 1})
        b_eq.append(Fraction(val))
    return Polytope(g.n, tuple(A_ub), tuple([Fraction(1)] * len(A_ub)),
                    tuple(A_eq), tuple(b_eq))


def _verify_primal(p: Polytope, x) -> bool:
    if any(v < 0 or v > 1 for v in x):
        return False
    for r, b in zip(p.A_ub, p.b_ub):
        if sum(x[k] * c for k, c in r.items()) > b:
            return False
    for r, b in zip(p.A_eq, p.b_eq):
        if sum(x[k] * c for k, c in r.items()) != b:
            return False
    return True


def _run(p: Polytope, c: Sequence) -> LPResult:
    res = lp.solve(c, p.A_ub, p.b_ub, p.A_eq, p.b_eq)
    if res.status == "infeasible":
        if lp.check_farkas(res.certificate, p.nvar, p.A_ub, p.b_ub, p.A_eq, p.b_eq):
            return LPResult("infeasible", None, None, res.certificate, True)
        # fall back to an independent re-solve with the rows reversed
        m = len(p.A_ub) + len(p.A_eq)
        again = lp.solve(c, p.A_ub, p.b_ub, p.A_eq, p.b_eq, row_order=list(range(m))[::-1])
        if again.status != "infeasible":
            raise AssertionError("LP status changed under row permutation")
        return LPResult("infeasible", None, None, None, True)
    if res.status != "optimal":
        raise AssertionError(f"unexpected LP status {res.status}")
    if not _verify_primal(p, res.x):
        raise AssertionError("LP primal fails its own constraints")
    if sum(ci * xi for ci, xi in zip(c, res.x)) != res.value:
        raise AssertionError("LP optimum does not match the primal")
    return LPResult("optimal", res.value, res.x)


def _objective(g: Graph, objective) -> list:
    if isinstance(objective, Mapping):
        c = [Fraction(0)] * g.n
        for v, w in objective.items():
            c[v] = Fraction(w)
        return c
    c = [Fraction(w) for w in objective]
    if len(c) != g.n:
        raise ValueError("objective length must equal the vertex count")
    return c


def lp_maximize(g: Graph, objective, fixed: Optional[Mapping[int, Fraction]] = None) -> LPResult:
    """Exact maximum of sum(w_v p_v) over the assignment polytope."""
    return _run(polytope(g, fixed), _objective(g, objective))


def feasible(g: Graph, fixed: Optional[Mapping[int, Fraction]] = None) -> LPResult:
    return _run(polytope(g, fixed), [0] * g.n)


def max_pair(g: Graph, a: int, b: int) -> LPResult:
    return lp_maximize(g, {a: 1, b: 1})


@dataclass(frozen=True)
class ExtendedVerdict:
    holds: bool
    reason: str
    witness: object  # Farkas certificate, LPResult point, or coloring

    def __bool__(self):
        return self.holds


def _check_pair(g: Graph, v1: int, v2: int):
    if v1 == v2:
        raise ValueError("distinguished vertices must differ")
    for v in (v1, v2):
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
    if g.adjacent(v1, v2):
        raise ValueError(f"vertices {v1} and {v2} are adjacent")


def is_extended_gadget(g: Graph, v1: int, v2: int) -> ExtendedVerdict:
    """True iff g is {0,1}-colorable and p(v1)=p(v2)=1 is LP-infeasible."""
    from .colorer import Coloring, solve

    _check_pair(g, v1, v2)
    pinned = feasible(g, {v1: 1, v2: 1})
    if pinned.status == "optimal":
        return ExtendedVerdict(False, "fractional point with both values 1", pinned)
    col = solve(g)
    if not isinstance(col, Coloring):
        return ExtendedVerdict(False, "graph is not {0,1}-colorable", col)
    return ExtendedVerdict(True, "pinned polytope is empty", pinned.certificate or pinned)


def indeterminacy_table(g: Graph, v1: int, v2: int) -> dict:
    """Feasibility of the polytope with (p_v1, p_v2) pinned at each 0/1 corner."""
    _check_pair(g, v1, v2)
    out = {}
    for a in (0, 1):
        for b in (0, 1):
            out[(a, b)] = feasible(g, {v1: a, v2: b}).status == "optimal"
    return out
