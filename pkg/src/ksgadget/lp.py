"""Exact two-phase simplex over the rationals.

Problem form::

    maximise  c.x
    subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0

Rows are sparse dicts {column: coefficient}. Pivoting uses Bland's rule, so
the method terminates and the result depends only on the input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Row = dict  # column -> Fraction


@dataclass(frozen=True)
class Farkas:
    """Multipliers y with y.A >= 0 columnwise, y_ub >= 0 and y.b < 0."""

    y_ub: tuple
    y_eq: tuple


@dataclass(frozen=True)
class SimplexResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Optional[Fraction]
    x: Optional[tuple]
    certificate: Optional[Farkas] = None
    pivots: int = 0


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, col: int, objs):
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            inv = 1 / piv
            prow = {k: v * inv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] *= inv
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(col)
            if f:
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                self.rhs[i] -= f * prhs
        for obj in objs:
            f = obj[0].get(col)
            if f:
                for k, v in prow.items():
                    nv = obj[0].get(k, 0) - f * v
                    if nv:
                        obj[0][k] = nv
                    else:
                        obj[0].pop(k, None)
                obj[1] -= f * prhs
        self.basis[r] = col
        self.pivots += 1

    def run(self, obj, allowed, extra_objs=()):
        """Maximise; obj = [reduced-cost dict, -value]. Returns False if unbounded."""
        while True:
            enter = None
            for k in sorted(c for c, v in obj[0].items() if v > 0 and c in allowed):
                enter = k
                break
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(enter)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter, [obj, *extra_objs])


def _reduced(cost: dict, tab: _Tableau):
    """Objective row [d, -z] for maximising cost given the current basis."""
    d = {k: Fraction(v) for k, v in cost.items() if v}
    z = Fraction(0)
    for i, b in enumerate(tab.basis):
        cb = cost.get(b, 0)
        if cb:
            for k, v in tab.rows[i].items():
                nv = d.get(k, 0) - cb * v
                if nv:
                    d[k] = nv
                else:
                    d.pop(k, None)
            z += cb * tab.rhs[i]
    return [d, -z]


def solve(c: Sequence, A_ub: Sequence[Row] = (), b_ub: Sequence = (),
          A_eq: Sequence[Row] = (), b_eq: Sequence = (),
          row_order: Optional[Sequence[int]] = None) -> SimplexResult:
    """Maximise c.x exactly. ``row_order`` permutes constraints (for cross-checks)."""
    nvar = len(c)
    cons = [(dict(r), Fraction(b), "ub", i) for i, (r, b) in enumerate(zip(A_ub, b_ub))]
    cons += [(dict(r), Fraction(b), "eq", i) for i, (r, b) in enumerate(zip(A_eq, b_eq))]
    if row_order is not None:
        cons = [cons[i] for i in row_order]
    rows, rhs, basis, flips = [], [], [], []
    col = nvar
    slack_of, art_cols = {}, []
    for ri, (r, b, kind, _) in enumerate(cons):
        r = {k: Fraction(v) for k, v in r.items() if v}
        flip = b < 0
        if flip:
            r = {k: -v for k, v in r.items()}
            b = -b
        if kind == "ub":
            r[col] = Fraction(-1 if flip else 1)
            slack_of[ri] = col
            col += 1
        flips.append(flip)
        rows.append(r)
        rhs.append(b)
    # identity column per row: slack with +1, otherwise an artificial
    ident = []
    for ri, (r, b, kind, _) in enumerate(cons):
        if kind == "ub" and not flips[ri]:
            basis.append(slack_of[ri])
            ident.append((slack_of[ri], False))
        else:
            rows[ri][col] = Fraction(1)
            basis.append(col)
            ident.append((col, True))
            art_cols.append(col)
            col += 1
    tab = _Tableau(rows, rhs, basis, col)
    art = set(art_cols)
    all_cols = set(range(col))

    if art:
        phase1 = _reduced({a: -1 for a in art}, tab)
        tab.run(phase1, all_cols)
        if phase1[1] != 0:  # optimum of -sum(a) is negative
            y = []
            for ri, (cidx, is_art) in enumerate(ident):
                cost = -1 if is_art else 0
                # dual of the row: cost of its identity column minus reduced cost
                yi = cost - phase1[0].get(cidx, 0)
                y.append(-yi if flips[ri] else yi)
            cert = _farkas(cons, y)
            return SimplexResult("infeasible", None, None, cert, tab.pivots)
        # drive remaining artificials out of the basis
        for i in range(len(tab.rows)):
            if tab.basis[i] in art:
                for k in sorted(tab.rows[i]):
                    if k not in art and tab.rows[i][k] != 0:
                        tab.pivot(i, k, [])
                        break
        keep = [i for i in range(len(tab.rows)) if tab.basis[i] not in art]
        tab.rows = [{k: v for k, v in tab.rows[i].items() if k not in art} for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
    allowed = all_cols - art
    obj = _reduced({j: Fraction(v) for j, v in enumerate(c) if v}, tab)
    if not tab.run(obj, allowed):
        return SimplexResult("unbounded", None, None, None, tab.pivots)
    x = [Fraction(0)] * nvar
    for i, b in enumerate(tab.basis):
        if b < nvar:
            x[b] = tab.rhs[i]
    return SimplexResult("optimal", -obj[1], tuple(x), None, tab.pivots)


def _farkas(cons, y) -> Farkas:
    """Scale phase-one duals to coprime integers and split them by row kind.

    At a phase-one optimum the duals already satisfy y.A >= 0 on the
    structural columns, y >= 0 on inequality rows and y.b < 0.
    """
    y = [Fraction(v) for v in y]
    den = 1
    for v in y:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in y]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    g = g or 1
    y_ub = [0] * sum(1 for c in cons if c[2] == "ub")
    y_eq = [0] * sum(1 for c in cons if c[2] == "eq")
    for (_, _, kind, idx), v in zip(cons, ints):
        (y_ub if kind == "ub" else y_eq)[idx] = v // g
    return Farkas(tuple(y_ub), tuple(y_eq))


def check_farkas(cert: Farkas, nvar: int, A_ub, b_ub, A_eq, b_eq) -> bool:
    """Independent check that cert proves A_ub x <= b_ub, A_eq x = b_eq, x >= 0 empty."""
    if len(cert.y_ub) != len(A_ub) or len(cert.y_eq) != len(A_eq):
        return False
    if any(v < 0 for v in cert.y_ub):
        return False
    comb = [Fraction(0)] * nvar
    rhs = Fraction(0)
    for y, r, b in list(zip(cert.y_ub, A_ub, b_ub)) + list(zip(cert.y_eq, A_eq, b_eq)):
        if y:
            for k, v in r.items():
                comb[k] += y * Fraction(v)
            rhs += y * Fraction(b)
    return all(v >= 0 for v in comb) and rhs < 0
