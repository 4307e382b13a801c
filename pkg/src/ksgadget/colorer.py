"""{0,1}-colorings: search, enumeration, gadget checks and critical subgraphs.

A coloring f must satisfy

* f(u) + f(v) <= 1 on every edge and every exclusive pair,
* sum of f over every maximum clique equals 1.

Pairwise exclusion on edges already implies "at most one 1" on every clique.
"""

from __future__ import annotations

import hashlib
import heapq
import os
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .graph import (CliqueReport, Graph, delete_edges, delete_vertex, graph_hash,
                    maximal_cliques, maximum_cliques)

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV = "KSGADGET_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, stats: "SearchStats"):
        super().__init__(f"search budget exceeded after {stats.nodes} nodes")
        self.stats = stats


class ColoringError(ValueError):
    """Raised when an operation needs a colorable (or uncolorable) graph."""


@dataclass
class SearchStats:
    nodes: int = 0
    conflicts: int = 0
    digest: str = ""


@dataclass(frozen=True)
class Coloring:
    values: tuple

    def bits(self) -> str:
        return "".join(str(b) for b in self.values)

    def __getitem__(self, v):
        return self.values[v]


@dataclass(frozen=True)
class KSCertificate:
    graph: Graph
    nodes: int
    conflicts: int
    digest: str
    max_cliques: int

    def to_json(self) -> dict:
        return {"kind": "ks-certificate", "graph_sha256": graph_hash(self.graph),
                "nodes": self.nodes, "conflicts": self.conflicts,
                "trace_sha256": self.digest, "maximum_cliques": self.max_cliques}


@dataclass(frozen=True)
class GadgetCertificate:
    graph: Graph
    pair: tuple
    witness: Coloring
    exclusion_digest: str
    nodes: int

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        return {"kind": "gadget-certificate", "graph_sha256": graph_hash(self.graph),
                "pair": list(self.pair), "witness": self.witness.bits(),
                "trace_sha256": self.exclusion_digest, "nodes": self.nodes}


@dataclass(frozen=True)
class GadgetRefusal:
    graph: Graph
    pair: tuple
    reason: str  # "adjacent" | "uncolorable" | "both-one"
    counterexample: Optional[Coloring] = None

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        d = {"kind": "gadget-refusal", "graph_sha256": graph_hash(self.graph),
             "pair": list(self.pair), "reason": self.reason}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample.bits()
        return d


# independent checker

def validate(g: Graph, f, report: Optional[CliqueReport] = None) -> list[str]:
    """Return the list of violated rules (empty when f is a valid coloring)."""
    vals = f.values if isinstance(f, Coloring) else tuple(f)
    problems = []
    if len(vals) != g.n or any(b not in (0, 1) for b in vals):
        return ["coloring has wrong length or non-binary entries"]
    for a, b in sorted(g.edges | g.exclusive):
        if vals[a] + vals[b] > 1:
            problems.append(f"pair ({a},{b}) both 1")
    for q in maximum_cliques(g, report):
        s = sum(vals[v] for v in q)
        if s != 1:
            problems.append(f"maximum clique {q} sums to {s}")
    return problems


# enumeration engine (chronological backtracking, lowest vertex first)

class _Engine:
    def __init__(self, g: Graph, budget: Optional[int]):
        self.g = g
        self.n = g.n
        self.budget = default_budget() if budget is None else budget
        nb = [set(g.neighbors(v)) for v in range(g.n)]
        for a, b in g.exclusive:
            nb[a].add(b)
            nb[b].add(a)
        self.nb = [sorted(s) for s in nb]
        self.report = maximal_cliques(g)
        self.cliques = maximum_cliques(g, self.report)
        self.member = [[] for _ in range(g.n)]
        for ci, q in enumerate(self.cliques):
            for v in q:
                self.member[v].append(ci)
        self.size = [len(q) for q in self.cliques]
        self.val = [-1] * g.n
        self.ones = [0] * len(self.cliques)
        self.zeros = [0] * len(self.cliques)
        self.trail: list[int] = []
        self.stats = SearchStats()
        self._h = hashlib.sha256()

    def _log(self, s: str):
        self._h.update(s.encode())

    def _set(self, v: int, b: int):
        self.val[v] = b
        self.trail.append(v)
        if b:
            for ci in self.member[v]:
                self.ones[ci] += 1
        else:
            for ci in self.member[v]:
                self.zeros[ci] += 1

    def _undo(self, mark: int):
        while len(self.trail) > mark:
            v = self.trail.pop()
            if self.val[v]:
                for ci in self.member[v]:
                    self.ones[ci] -= 1
            else:
                for ci in self.member[v]:
                    self.zeros[ci] -= 1
            self.val[v] = -1

    def assign(self, v: int, b: int) -> bool:
        """Set v=b and propagate. False on conflict (trail left for undo)."""
        queue = [(v, b)]
        val = self.val
        while queue:
            u, c = queue.pop()
            cur = val[u]
            if cur != -1:
                if cur != c:
                    return False
                continue
            self._set(u, c)
            if c == 1:
                for w in self.nb[u]:
                    if val[w] == 1:
                        return False
                    if val[w] == -1:
                        queue.append((w, 0))
            else:
                for ci in self.member[u]:
                    if self.ones[ci]:
                        continue
                    free = self.size[ci] - self.zeros[ci]
                    if free == 0:
                        return False
                    if free == 1:
                        for w in self.cliques[ci]:
                            if val[w] == -1:
                                queue.append((w, 1))
                                break
        return True

    def _tick(self):
        self.stats.nodes += 1
        if self.stats.nodes > self.budget:
            self.stats.digest = self._h.hexdigest()
            raise SearchBudgetExceeded(self.stats)

    def _pins(self, fixed: Mapping[int, int]) -> bool:
        for v in sorted(fixed):
            if not self.assign(v, int(fixed[v])):
                return False
        # the trivial clique check: a clique with no free vertex and no 1
        for ci in range(len(self.cliques)):
            if not self.ones[ci] and self.zeros[ci] == self.size[ci]:
                return False
        return True

    def enumerate(self, fixed: Mapping[int, int], cap: int):
        out = []
        if not self._pins(fixed):
            return out, False

        def lowest_free(start):
            for w in range(start, self.n):
                if self.val[w] == -1:
                    return w
            return None

        stack = []  # (mark, vertex, alternative or None)
        v = lowest_free(0)
        while True:
            if v is None:
                out.append(tuple(self.val))
                if len(out) >= cap:
                    return out, True
                ok = False
            else:
                self._tick()
                mark = len(self.trail)
                stack.append((mark, v, 1))
                ok = self.assign(v, 0)
            while not ok:
                while stack and stack[-1][2] is None:
                    stack.pop()
                if not stack:
                    return out, False
                mark, u, alt = stack.pop()
                self._undo(mark)
                stack.append((mark, u, None))
                self._tick()
                ok = self.assign(u, alt)
            v = lowest_free(0)

    def _finish(self, result):
        self.stats.digest = self._h.hexdigest()
        return result


# decision engine
#
# The coloring rules as clauses over x_v = f(v): (~x_a | ~x_b) per edge or
# exclusive pair, (x_u | x_v | ...) per maximum clique. Literal 2v means
# x_v = 1 and 2v+1 means x_v = 0. Conflicts are analysed to the first unique
# implication point and the learnt clause is kept, so a local contradiction
# inside one gadget is proved once rather than once per branch elsewhere.

def _luby(i: int) -> int:
    """i-th term (0-based) of the Luby restart sequence 1 1 2 1 1 2 4 ..."""
    size, seq = 1, 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i %= size
    return 1 << seq


class _CDCL:
    RESTART_UNIT = 64
    DECAY = 1 / 0.95

    def __init__(self, g: Graph, budget: Optional[int]):
        self.n = g.n
        self.budget = default_budget() if budget is None else budget
        self.report = maximal_cliques(g)
        self.cliques = maximum_cliques(g, self.report)
        self.val = [-1] * g.n
        self.level = [0] * g.n
        self.reason: list = [None] * g.n
        self.trail: list[int] = []
        self.lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.watches: list[list[int]] = [[] for _ in range(2 * g.n)]
        self.activity = [0.0] * g.n
        self.inc = 1.0
        self.heap: list = []
        self.stats = SearchStats()
        self._h = hashlib.sha256()
        self.ok = True
        for a, b in sorted(g.edges | g.exclusive):
            self._add([2 * a + 1, 2 * b + 1])
        for q in self.cliques:
            self._add([2 * v for v in q])
            for v in q:
                self.activity[v] += 1.0
        for v in range(g.n):
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _lit_val(self, lit: int) -> int:
        x = self.val[lit >> 1]
        if x < 0:
            return -1
        return 1 if x == 1 - (lit & 1) else 0

    def _enqueue(self, lit: int, reason) -> bool:
        cur = self._lit_val(lit)
        if cur != -1:
            return cur == 1
        v = lit >> 1
        self.val[v] = 1 - (lit & 1)
        self.level[v] = len(self.lim)
        self.reason[v] = reason
        self.trail.append(lit)
        return True

    def _add(self, lits: list[int]):
        if not self.ok:
            return
        if len(lits) == 0:
            self.ok = False
        elif len(lits) == 1:
            self.ok = self._enqueue(lits[0], None)
        else:
            ci = len(self.clauses)
            self.clauses.append(list(lits))
            self.watches[lits[0]].append(ci)
            self.watches[lits[1]].append(ci)

    def _propagate(self):
        """Unit propagation; returns a conflicting clause index or None."""
        clauses, watches = self.clauses, self.watches
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            watches[false_lit] = keep = []
            i = 0
            while i < len(ws):
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                if self._lit_val(c[0]) == 1:
                    keep.append(ci)
                    continue
                for k in range(2, len(c)):
                    if self._lit_val(c[k]) != 0:
                        c[1], c[k] = c[k], c[1]
                        watches[c[1]].append(ci)
                        break
                else:
                    keep.append(ci)
                    if not self._enqueue(c[0], ci):
                        keep.extend(ws[i:])
                        return ci
        return None

    def _bump(self, v: int):
        self.activity[v] += self.inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(self.n) if self.val[u] < 0]
            heapq.heapify(self.heap)
        elif self.val[v] < 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl: int):
        seen = [False] * self.n
        learnt = [0]
        counter = 0
        p = None
        idx = len(self.trail) - 1
        cur = len(self.lim)
        c = self.clauses[confl]
        while True:
            for q in (c if p is None else c[1:]):
                v = q >> 1
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.level[v] == cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[self.trail[idx] >> 1]:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            seen[p >> 1] = False
            counter -= 1
            if counter == 0:
                break
            c = self.clauses[self.reason[p >> 1]]
        learnt[0] = p ^ 1
        back = 0
        if len(learnt) > 1:
            j = max(range(1, len(learnt)), key=lambda k: self.level[learnt[k] >> 1])
            learnt[1], learnt[j] = learnt[j], learnt[1]
            back = self.level[learnt[1] >> 1]
        return learnt, back

    def _backtrack(self, level: int):
        if len(self.lim) <= level:
            return
        mark = self.lim[level]
        for lit in self.trail[mark:]:
            v = lit >> 1
            self.val[v] = -1
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[mark:]
        del self.lim[level:]
        self.qhead = mark

    def _decide(self) -> Optional[int]:
        while self.heap:
            a, v = heapq.heappop(self.heap)
            if self.val[v] < 0 and -a == self.activity[v]:
                return v
        for v in range(self.n):  # stale heap after rescaling
            if self.val[v] < 0:
                return v
        return None

    def solve(self, fixed: Mapping[int, int]) -> Optional[tuple]:
        for v in sorted(fixed):
            self._add([2 * v + (0 if fixed[v] else 1)])
        if not self.ok or self._propagate() is not None:
            self._h.update(b"root-conflict")
            self.stats.conflicts += 1
            return self._finish(None)
        restart_no, left = 0, self.RESTART_UNIT * _luby(0)
        while True:
            confl = self._propagate()
            if confl is not None:
                self.stats.conflicts += 1
                if not self.lim:
                    self._h.update(b"x0;")
                    return self._finish(None)
                learnt, back = self._analyze(confl)
                self._h.update(f"x{len(learnt)}@{back};".encode())
                self._backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(ci)
                    self.watches[learnt[1]].append(ci)
                    self._enqueue(learnt[0], ci)
                self.inc *= self.DECAY
                left -= 1
                continue
            if left <= 0 and self.lim:
                restart_no += 1
                left = self.RESTART_UNIT * _luby(restart_no)
                self._h.update(b"r;")
                self._backtrack(0)
                continue
            v = self._decide()
            if v is None:
                return self._finish(tuple(self.val))
            self.stats.nodes += 1
            if self.stats.nodes > self.budget:
                self._finish(None)
                raise SearchBudgetExceeded(self.stats)
            self._h.update(f"b{v};".encode())
            self.lim.append(len(self.trail))
            self._enqueue(2 * v, None)

    def _finish(self, result):
        self.stats.digest = self._h.hexdigest()
        return result


def _check_pins(g: Graph, fixed: Optional[Mapping[int, int]]):
    fixed = dict(fixed or {})
    for v, b in fixed.items():
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
        if b not in (0, 1):
            raise ValueError("pinned values must be 0 or 1")
    return fixed


def solve(g: Graph, fixed: Optional[Mapping[int, int]] = None,
          budget: Optional[int] = None) -> Union[Coloring, KSCertificate]:
    """Find a coloring, or prove there is none (optionally with pinned values)."""
    fixed = _check_pins(g, fixed)
    eng = _CDCL(g, budget)
    res = eng.solve(fixed)
    if res is None:
        return KSCertificate(g, eng.stats.nodes, eng.stats.conflicts,
                             eng.stats.digest, len(eng.cliques))
    col = Coloring(res)
    problems = validate(g, col, eng.report)
    if problems:  # the engine and the checker disagree: never hide it
        raise AssertionError(f"solver produced invalid coloring: {problems}")
    return col


def is_colorable(g: Graph, fixed=None, budget=None) -> bool:
    return isinstance(solve(g, fixed, budget), Coloring)


@dataclass
class Enumeration:
    colorings: list
    truncated: bool
    nodes: int


def enumerate_colorings(g: Graph, cap: Optional[int] = None,
                        fixed: Optional[Mapping[int, int]] = None,
                        budget: Optional[int] = None) -> Enumeration:
    """All colorings in lexicographic order of their bit vectors, up to cap."""
    if cap is not None and cap < 1:
        raise ValueError("cap must be at least 1")
    fixed = _check_pins(g, fixed)
    eng = _Engine(g, budget)
    raw, trunc = eng.enumerate(fixed, cap if cap is not None else float("inf"))
    cols = [Coloring(tuple(r)) for r in sorted(raw)]
    for c in cols:
        if validate(g, c, eng.report):
            raise AssertionError("enumeration produced an invalid coloring")
    return Enumeration(cols, trunc, eng.stats.nodes)


def is_gadget(g: Graph, v1: int, v2: int, budget: Optional[int] = None):
    """Certificate if f(v1)=f(v2)=1 never happens in a colorable g, else a refusal."""
    if v1 == v2:
        raise ValueError("distinguished vertices must differ")
    for v in (v1, v2):
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
    pair = (v1, v2)
    if g.adjacent(v1, v2):
        return GadgetRefusal(g, pair, "adjacent")
    base = solve(g, budget=budget)
    if not isinstance(base, Coloring):
        return GadgetRefusal(g, pair, "uncolorable")
    eng = _CDCL(g, budget)
    res = eng.solve({v1: 1, v2: 1})
    if res is not None:
        return GadgetRefusal(g, pair, "both-one", Coloring(res))
    return GadgetCertificate(g, pair, base, eng.stats.digest, eng.stats.nodes)


def _require_colorable(g: Graph, budget) -> Coloring:
    c = solve(g, budget=budget)
    if not isinstance(c, Coloring):
        raise ColoringError("graph is not {0,1}-colorable; run solve() for a certificate")
    return c


def find_gadget_pairs(g: Graph, budget: Optional[int] = None) -> list[tuple]:
    """All non-adjacent pairs that are never both 1, in lexicographic order."""
    first = _require_colorable(g, budget)
    together = [[False] * g.n for _ in range(g.n)]

    def mark(col):
        ones = [v for v in range(g.n) if col.values[v]]
        for a in ones:
            for b in ones:
                together[a][b] = True

    mark(first)
    can_be_one = [False] * g.n
    for v in range(g.n):
        if first.values[v]:
            can_be_one[v] = True
            continue
        r = solve(g, {v: 1}, budget)
        if isinstance(r, Coloring):
            can_be_one[v] = True
            mark(r)
    out = []
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if g.adjacent(a, b):
                continue
            if not (can_be_one[a] and can_be_one[b]):
                out.append((a, b))
                continue
            if together[a][b]:
                continue
            r = solve(g, {a: 1, b: 1}, budget)
            if isinstance(r, Coloring):
                mark(r)
            else:
                out.append((a, b))
    return out


def forced_value(g: Graph, v: int, budget: Optional[int] = None) -> Optional[int]:
    """0 or 1 when every coloring agrees on v, None when v is unforced."""
    _require_colorable(g, budget)
    one = is_colorable(g, {v: 1}, budget)
    zero = is_colorable(g, {v: 0}, budget)
    if one and zero:
        return None
    return 1 if one else 0


# critical subgraphs

def _fixed_dim(g: Graph) -> Graph:
    if g.dim is not None:
        return g
    return g.with_dim(maximal_cliques(g).omega)


def make_vertex_critical(g: Graph, budget: Optional[int] = None) -> tuple[Graph, list]:
    """Delete vertices greedily while the graph stays uncolorable.

    The clique size is frozen first, so colorability is monotone under vertex
    deletion and one pass yields a vertex-critical graph. Returns the graph
    and the kept original vertex indices.
    """
    g = _fixed_dim(g)
    if is_colorable(g, budget=budget):
        raise ColoringError("graph is colorable; nothing to make critical")
    keep = list(range(g.n))
    cur = g
    pos = 0
    while pos < cur.n:
        h, _ = delete_vertex(cur, pos)
        if not is_colorable(h, budget=budget):
            cur = h
            del keep[pos]
        else:
            pos += 1
    return cur, keep


def make_edge_critical(g: Graph, budget: Optional[int] = None) -> Graph:
    """Delete edges greedily while the graph stays uncolorable."""
    g = _fixed_dim(g)
    if is_colorable(g, budget=budget):
        raise ColoringError("graph is colorable; nothing to make critical")
    cur = g
    for e in sorted(g.edges):
        h, _ = delete_edges(cur, [e])
        if not is_colorable(h, budget=budget):
            cur = h
    return cur


@dataclass(frozen=True)
class ExtractedGadget:
    graph: Graph
    pair: tuple
    case: str
    origin: tuple  # original vertex index for each vertex of graph
    certificate: GadgetCertificate = field(repr=False, default=None)


def _membership(cliques, n):
    mem = [[] for _ in range(n)]
    for q in cliques:
        for v in q:
            mem[v].append(q)
    return mem


def _pick_pair(candidates1, candidates2, ok):
    for a in sorted(candidates1):
        for b in sorted(candidates2):
            if a != b and ok(a, b):
                return (a, b)
    return None


def _cases_i_ii(crit: Graph, origin: list, nonadj_orig, budget):
    """Try cases (i) and (ii) on a critical graph; None when neither applies."""
    mq = maximum_cliques(crit)
    mem = _membership(mq, crit.n)
    for count, case in ((1, "i"), (2, "ii")):
        for v in range(crit.n):
            if len(mem[v]) != count:
                continue
            h, idx = delete_vertex(crit, v)
            q1 = [idx[u] for u in mem[v][0] if u != v]
            if case == "i":
                others = [u for u in range(h.n)]
                pair = _pick_pair(q1, others,
                                  lambda a, b: not h.adjacent(a, b) and nonadj_orig(a, b, idx))
            else:
                q2 = [idx[u] for u in mem[v][1] if u != v]
                pair = _pick_pair(q1, q2,
                                  lambda a, b: not h.adjacent(a, b) and nonadj_orig(a, b, idx))
            if pair is None:
                continue
            cert = is_gadget(h, *pair, budget=budget)
            if cert:
                inv = {new: old for old, new in idx.items()}
                return h, pair, case, tuple(origin[inv[i]] for i in range(h.n)), cert
    return None


def extract_gadget(g_ks: Graph, budget: Optional[int] = None) -> ExtractedGadget:
    """Find a gadget inside an uncolorable graph by way of a critical subgraph."""
    g = _fixed_dim(g_ks)
    if maximal_cliques(g).omega < 3:
        raise ColoringError("gadget extraction needs clique number at least 3")
    crit, keep = make_vertex_critical(g, budget)

    def nonadj_crit(a, b, idx):
        return True

    found = _cases_i_ii(crit, keep, nonadj_crit, budget)
    if found:
        h, pair, case, origin, cert = found
        return ExtractedGadget(h, pair, case, origin, cert)

    # case (iii): work on an edge-critical graph, choosing pairs that were
    # non-adjacent in the input so they stay non-orthogonal
    ecrit = make_edge_critical(crit, budget)

    def nonadj_input(a, b, idx):
        inv = {new: old for old, new in idx.items()}
        return not g.adjacent(keep[inv[a]], keep[inv[b]])

    found = _cases_i_ii(ecrit, keep, nonadj_input, budget)
    if found:
        h, pair, _, origin, cert = found
        return ExtractedGadget(h, pair, "iii", origin, cert)
    mq = maximum_cliques(ecrit)
    mem = _membership(mq, ecrit.n)
    for v in range(ecrit.n):
        if len(mem[v]) < 2:
            continue
        q1, q2 = mem[v][0], mem[v][1]
        h, _ = delete_edges(ecrit, [(v, u) for u in q1 if u != v])
        ident = {u: u for u in range(h.n)}
        pair = _pick_pair([u for u in q1 if u != v], [u for u in q2 if u != v],
                          lambda a, b: not h.adjacent(a, b) and nonadj_input(a, b, ident))
        if pair is None:
            continue
        cert = is_gadget(h, *pair, budget=budget)
        if cert:
            return ExtractedGadget(h, pair, "iii", tuple(keep), cert)
    raise ColoringError("no gadget found in the critical subgraph")
