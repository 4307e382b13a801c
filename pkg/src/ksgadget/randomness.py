"""Bounds on the joint outcome p(A_a = 1, B_b = 1) for a maximally entangled pair.

Quantum value: both parties measure in the bases of the construction, and
for a maximally entangled state of local dimension d the joint probability
of the projectors onto v_a and v_b is |<v_a|v_b>|^2 / d.

No-signalling bound: with perfect correlations on equal settings, a local
assignment gives p(A_a=1, B_b=1) <= (p_a + p_b) / 2, so the LP maximum of
p_a + p_b over the assignment polytope divided by two bounds it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import lp
from . import scalars as S
from .constructions.base import Construction
from .fractional import lp_maximize
from .vectors import inner, norm2, overlap


@dataclass(frozen=True)
class PairBounds:
    pair: tuple
    quantum_prob: object       # exact scalar or Approx
    lp_value: Fraction
    ns_upper: Fraction
    warning: Optional[str] = None

    def to_json(self) -> dict:
        d = {"pair": list(self.pair), "quantum_prob": str(self.quantum_prob),
             "lp_value": str(self.lp_value), "ns_upper": str(self.ns_upper)}
        if self.warning:
            d["warning"] = self.warning
        return d


def born_probability(u, v):
    """<Phi| P_u (x) P_v |Phi> with |Phi> = sum_j |jj> / sqrt(d), real vectors.

    Expanding the state gives (1/d) sum_{j,k} (P_u)_{jk} (P_v)_{jk}; the sum
    is carried out entry by entry, independently of the Gram route.
    """
    d = len(u)
    nu, nv = norm2(u), norm2(v)
    u = [S.as_scalar(x) for x in u]
    v = [S.as_scalar(x) for x in v]
    total = Fraction(0)
    for j in range(d):
        for k in range(d):
            total = total + (u[j] * u[k] / nu) * (v[j] * v[k] / nv)
    return total / d


def quantum_prob(u, v):
    o = overlap(u, v)
    return o * o / len(u)


def pair_bounds(con: Construction, a: int, b: int) -> PairBounds:
    if con.vectors is None:
        raise ValueError("pair bounds need an expanded construction with vectors")
    g = con.graph
    for v in (a, b):
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
    if a == b:
        raise ValueError("the two vertices must differ")
    u, v = con.vectors[a], con.vectors[b]
    q = quantum_prob(u, v)
    q2 = born_probability(u, v)
    if S.is_exact(q) and S.is_exact(q2):
        agree = S.is_zero(q - q2)
    else:
        agree = abs(S.to_mp(q) - S.to_mp(q2)) <= 1e-12
    if not agree:
        raise AssertionError("Gram and Born evaluations of the joint probability disagree")
    res = lp_maximize(g, {a: 1, b: 1})
    if res.status != "optimal":
        raise ValueError("assignment polytope is empty")
    warn = None
    if g.adjacent(a, b) or S.is_zero(inner(u, v)):
        warn = "orthogonal pair: the quantum probability is 0 and the bound is degenerate"
    return PairBounds((a, b), q, res.optimum, res.optimum / 2, warn)


# the hand-picked subsystem for the Clifton graph, numbered as in its
# two-layer drawing: five pairwise exclusions and two complete bases
RESTRICTED_UB = ((1, 2), (1, 6), (4, 5), (7, 8), (3, 8))
RESTRICTED_EQ = ((2, 3, 4), (5, 6, 7))


def restricted_polytope() -> tuple:
    """(A_ub, b_ub, A_eq, b_eq) over p_1..p_8 (0-based variables)."""
    A_ub = tuple({i - 1: 1 for i in row} for row in RESTRICTED_UB)
    A_eq = tuple({i - 1: 1 for i in row} for row in RESTRICTED_EQ)
    return A_ub, (Fraction(1),) * len(A_ub), A_eq, (Fraction(1),) * len(A_eq)


def restricted_feasible(p) -> bool:
    A_ub, b_ub, A_eq, b_eq = restricted_polytope()
    p = [Fraction(x) for x in p]
    if any(x < 0 for x in p):
        return False
    return (all(sum(p[k] for k in r) <= c for r, c in zip(A_ub, b_ub))
            and all(sum(p[k] for k in r) == c for r, c in zip(A_eq, b_eq)))


def restricted_lp_clifton() -> Fraction:
    """Maximum of p_1 + p_8 subject only to the seven listed constraints."""
    A_ub, b_ub, A_eq, b_eq = restricted_polytope()
    c = [1, 0, 0, 0, 0, 0, 0, 1]
    res = lp.solve(c, A_ub, b_ub, A_eq, b_eq)
    if res.status != "optimal" or not restricted_feasible(res.x):
        raise AssertionError(f"restricted LP failed: {res.status}")
    return res.value
