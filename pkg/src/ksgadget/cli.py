"""ksgadget command line.

Every command prints one JSON verdict on stdout. Exit codes: 0 when the
property holds (or the command succeeded), 1 when it is refuted, 2 on any
error. ``-`` reads the input from stdin, so builders can be piped straight
into checkers::

    ksgadget build clifton | ksgadget lp max-pair - u1 u8
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import colorer, fractional, randomness, reduction
from . import scalars as S
from .constructions import (Construction, build_alt_extended, build_clifton, build_clifton_lift,
                            build_g0, build_g1, build_gadget_pair, build_ks1, build_ks2,
                            build_ks_from_gadget, build_nested_extended, build_pitowsky,
                            build_si_simplex, build_state_dependent_40)
from .graph import Graph, canonical_json, find_forbidden, graph_hash
from .vectors import DEFAULT_TOL, VectorSet, check_faithful, orthogonality_graph

__version__ = "0.1.0"


@dataclass(frozen=True)
class CommandResult:
    code: int
    verdict: dict

    @property
    def text(self) -> str:
        return canonical_json(self.verdict)


class CliError(Exception):
    pass


# input handling

@dataclass
class Loaded:
    kind: str                      # "graph" | "construction" | "vectors"
    sha256: str
    graph: Optional[Graph] = None
    construction: Optional[Construction] = None
    vectors: Optional[VectorSet] = None


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def load(path: str, stdin=None, tol: float = DEFAULT_TOL) -> Loaded:
    text = _read(path, stdin if stdin is not None else sys.stdin)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"malformed JSON in {path} at line {e.lineno} column {e.colno}: "
                       f"{e.msg}") from None
    sha = hashlib.sha256(canonical_json(obj).encode()).hexdigest()
    try:
        if isinstance(obj, dict) and "construction" in obj:
            con = Construction.from_json(obj)
            return Loaded("construction", sha, con.graph, con, con.vectors)
        if isinstance(obj, dict) and "n" in obj:
            return Loaded("graph", sha, Graph.from_json(obj))
        if isinstance(obj, dict) and "vectors" in obj:
            V = VectorSet.from_json(obj)
            return Loaded("vectors", sha, orthogonality_graph(V, tol), None, V)
    except (ValueError, IndexError, KeyError, TypeError) as e:
        raise CliError(f"invalid input in {path}: {e}") from None
    raise CliError(f"{path} is neither a graph, a vector set nor a construction")


def vertex(g: Graph, token: str) -> int:
    """A vertex label if one matches, otherwise a 1-based index."""
    if g.labels and token in g.labels:
        return g.labels.index(token)
    try:
        k = int(token)
    except ValueError:
        raise CliError(f"unknown vertex {token!r}") from None
    if not 1 <= k <= g.n:
        raise CliError(f"vertex {k} out of range 1..{g.n}")
    return k - 1


_SQRT = re.compile(r"^\s*(?:([-+]?\d+(?:/\d+)?)\s*\*?\s*)?sqrt\((\d+)\)\s*(?:/\s*(\d+))?\s*$")
_INV_SQRT = re.compile(r"^\s*(\d+)\s*/\s*sqrt\((\d+)\)\s*$")


def scalar(token: str):
    """Parse 3/5, 0.6, sqrt(2)/2, 1/sqrt(2) exactly; anything else as a float."""
    try:
        return Fraction(token)
    except ValueError:
        pass
    m = _SQRT.match(token)
    if m:
        coef = Fraction(m.group(1) or 1) / Fraction(m.group(3) or 1)
        return coef * S.sqrt(Fraction(int(m.group(2))))
    m = _INV_SQRT.match(token)
    if m:
        r = int(m.group(2))
        return Fraction(int(m.group(1)), r) * S.sqrt(Fraction(r))
    try:
        return S.Approx(S.ctx.mpf(token))
    except (ValueError, TypeError):
        raise CliError(f"cannot parse number {token!r}") from None


def _labels(g: Graph, vs) -> list:
    return [g.label(v) for v in vs]


def _fmt_scalar(x) -> str:
    x = S.as_scalar(x)
    if isinstance(x, S.Approx):
        return S.ctx.nstr(x.v, 20)
    return str(x)


# commands

def _graph_check(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    if a.cap:
        en = colorer.enumerate_colorings(g, cap=a.cap, budget=a.budget)
        code = 0 if en.colorings else 1
        return CommandResult(code, {"colorings": [c.bits() for c in en.colorings],
                                    "truncated": en.truncated})
    res = colorer.solve(g, budget=a.budget)
    if isinstance(res, colorer.Coloring):
        return CommandResult(0, {"colorable": True, "coloring": res.bits()})
    return CommandResult(1, {"colorable": False, "certificate": res.to_json()})


def _graph_gadgets(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    if a.vertices:
        if len(a.vertices) != 2:
            raise CliError("give two vertices or none")
        v1, v2 = (vertex(g, t) for t in a.vertices)
        cert = colorer.is_gadget(g, v1, v2, budget=a.budget)
        return CommandResult(0 if cert else 1, {"gadget": bool(cert), "result": cert.to_json()})
    if not colorer.is_colorable(g, budget=a.budget):
        return CommandResult(1, {"colorable": False, "pairs": []})
    pairs = colorer.find_gadget_pairs(g, budget=a.budget)
    return CommandResult(0, {"colorable": True,
                             "pairs": [_labels(g, p) for p in pairs]})


def _graph_critical(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    if colorer.is_colorable(g, budget=a.budget):
        return CommandResult(1, {"colorable": True, "critical": None})
    if a.edges:
        crit = colorer.make_edge_critical(g, budget=a.budget)
        return CommandResult(0, {"critical": crit.to_json(), "kind": "edge"})
    crit, kept = colorer.make_vertex_critical(g, budget=a.budget)
    return CommandResult(0, {"critical": crit.to_json(), "kind": "vertex",
                             "kept": _labels(g, kept)})


def _graph_extract(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    if colorer.is_colorable(g, budget=a.budget):
        return CommandResult(1, {"colorable": True, "gadget": None})
    ex = colorer.extract_gadget(g, budget=a.budget)
    return CommandResult(0, {"gadget": ex.graph.to_json(), "pair": list(ex.pair),
                             "case": ex.case, "origin": _labels(g, ex.origin),
                             "certificate": ex.certificate.to_json()})


def _vectors_graph(a, ld: Loaded) -> CommandResult:
    if ld.vectors is None:
        raise CliError("input carries no vectors")
    g = orthogonality_graph(ld.vectors, a.tol, ld.graph.labels if ld.graph else None)
    return CommandResult(0, {"graph": g.to_json(), "tol": a.tol})


def _vectors_verify(a, ld: Loaded) -> CommandResult:
    if ld.vectors is None:
        raise CliError("input carries no vectors")
    g = ld.graph
    hashes = {}
    if a.graph_file:
        other = load(a.graph_file, a.stdin)
        g = other.graph
        hashes[a.graph_file] = other.sha256
    v = check_faithful(ld.vectors, g, a.tol)
    return CommandResult(0 if v else 1, {
        "faithful": v.faithful, "tol": a.tol,
        "missing_edges": [list(e) for e in v.missing_edges],
        "extra_orthogonal": [list(e) for e in v.extra_orthogonal],
        "duplicate_rays": [list(e) for e in v.duplicate_rays], "extra_inputs": hashes})


def _pair(a, ld: Loaded, what: str) -> tuple:
    """Two vertex arguments, or the construction's distinguished pair when none are given."""
    if not a.vertices and ld.construction is not None and len(ld.construction.distinguished) == 2:
        return ld.construction.pair
    if len(a.vertices) != 2:
        raise CliError(f"{what} needs two vertices")
    return tuple(vertex(ld.graph, t) for t in a.vertices)


def _lp_max_pair(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    v1, v2 = _pair(a, ld, "max-pair")
    res = fractional.max_pair(g, v1, v2)
    return CommandResult(0 if res.status == "optimal" else 1,
                         {"pair": _labels(g, (v1, v2)), **res.to_json()})


def _lp_table(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    v1, v2 = _pair(a, ld, "table")
    tab = fractional.indeterminacy_table(g, v1, v2)
    ext = fractional.is_extended_gadget(g, v1, v2)
    return CommandResult(0 if ext else 1, {
        "pair": _labels(g, (v1, v2)), "extended_gadget": bool(ext),
        "table": {f"{x}{y}": ("feasible" if ok else "infeasible") for (x, y), ok in tab.items()}})


def _reduce(a, ld: Loaded) -> CommandResult:
    try:
        r = reduction.reduce(ld.graph, a.mode or "virtual")
    except ValueError as e:
        raise CliError(str(e)) from None
    out = r.construction.to_json() if r.construction is not None else r.target.to_json()
    verdict = {"mode": r.mode, "omega": r.omega, "target_sha256": graph_hash(r.target),
               "vertices": r.target.n, "edges": len(r.target.edges),
               "placements": len(r.placements)}
    if a.out:
        _write(a.out, out)
    else:
        verdict["target"] = out
    if a.map:
        _write(a.map, r.to_json())
    return CommandResult(0, verdict)


def _bounds(a, ld: Loaded) -> CommandResult:
    if ld.vectors is None:
        raise CliError("bounds need vectors")
    con = ld.construction or Construction("vectors", ld.graph, ld.vectors)
    if not a.pair:
        raise CliError("give --pair a b")
    v1, v2 = (vertex(con.graph, t) for t in a.pair)
    pb = randomness.pair_bounds(con, v1, v2)
    d = pb.to_json()
    d["quantum_prob"] = _fmt_scalar(pb.quantum_prob)
    d["pair"] = _labels(con.graph, pb.pair)
    ok = S.to_mp(pb.quantum_prob) <= S.to_mp(pb.ns_upper) and pb.warning is None
    return CommandResult(0 if ok else 1, d)


def _forbidden(a, ld: Loaded) -> CommandResult:
    g = ld.graph
    d = a.d or g.dim or (ld.vectors.d if ld.vectors is not None else None)
    if d is None:
        raise CliError("give --d")
    try:
        found = find_forbidden(g, d)
    except ValueError as e:
        raise CliError(str(e)) from None
    emb = [{"square": _labels(g, m.square), "apex": _labels(g, m.apex)} for m in found]
    return CommandResult(0 if not found else 1, {"d": d, "free": not found, "embeddings": emb})


BUILDERS = ("clifton", "clifton-lift", "gadget-pair", "state-dependent-40", "nested",
            "alt", "ks", "g0", "g1", "ks1", "ks2", "si-simplex", "pitowsky")


def _need(v, flag):
    if v is None:
        raise CliError(f"this builder needs --{flag}")
    return v


def _build(a) -> Construction:
    name = a.name
    mode = a.mode or "virtual"
    ov = scalar(a.overlap) if a.overlap else None
    if name == "clifton":
        return build_clifton()
    if name == "clifton-lift":
        return build_clifton_lift(_need(a.d, "d"))
    if name == "gadget-pair":
        return build_gadget_pair(_need(ov, "overlap"))
    if name == "state-dependent-40":
        return build_state_dependent_40()
    if name == "nested":
        return build_nested_extended(_need(a.k, "k"), ov)
    if name == "alt":
        return build_alt_extended(scalar(_need(a.x, "x")), _need(a.t, "t"))
    if name == "ks":
        src = load(a.source, a.stdin).construction if a.source else build_clifton()
        if src is None:
            raise CliError("--from must hold an expanded construction")
        return build_ks_from_gadget(src, a.p or 3, a.q or 1)
    if name == "g0":
        return build_g0(a.d or 3, mode)
    if name == "g1":
        return build_g1(mode)
    if name == "ks1":
        return build_ks1(mode)
    if name == "ks2":
        return build_ks2(mode)
    if name == "si-simplex":
        return build_si_simplex(_need(a.d, "d"), mode)
    if name == "pitowsky":
        return build_pitowsky(_need(ov, "overlap"), mode)
    raise CliError(f"unknown construction {name!r}; choose from {', '.join(BUILDERS)}")


def _write(path: str, obj):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(canonical_json(obj))
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror}") from None


# argument parsing

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="orthogonality tolerance for vector inputs")
    common.add_argument("--budget", type=int, default=None,
                        help="search node budget (default: $KSGADGET_BUDGET or 1e8)")
    common.add_argument("--mode", choices=("virtual", "expanded"), default=None)
    common.add_argument("--out", default=None, help="write the main artifact to this file")
    common.add_argument("--cap", type=int, default=None, help="enumerate up to this many colorings")

    p = argparse.ArgumentParser(prog="ksgadget", description="01-gadget and KS-set toolkit")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[common], help="coloring questions")
    g.add_argument("action", choices=("check", "gadgets", "critical", "extract"))
    g.add_argument("input")
    g.add_argument("vertices", nargs="*")
    g.add_argument("--edges", action="store_true", help="edge-critical instead of vertex-critical")

    v = sub.add_parser("vectors", parents=[common], help="orthogonality graphs")
    v.add_argument("action", choices=("graph", "verify"))
    v.add_argument("input")
    v.add_argument("graph_file", nargs="?")

    lp_ = sub.add_parser("lp", parents=[common], help="exact LP over [0,1]-assignments")
    lp_.add_argument("action", choices=("max-pair", "table"))
    lp_.add_argument("input")
    lp_.add_argument("vertices", nargs="*")

    b = sub.add_parser("build", parents=[common], help="emit a construction")
    b.add_argument("name", choices=BUILDERS)
    b.add_argument("--x")
    b.add_argument("--k", type=int)
    b.add_argument("--t", type=int)
    b.add_argument("--d", type=int)
    b.add_argument("--p", type=int)
    b.add_argument("--q", type=int)
    b.add_argument("--overlap")
    b.add_argument("--from", dest="source", help="gadget construction for 'ks'")

    r = sub.add_parser("reduce", parents=[common], help="coloring to {0,1}-coloring reduction")
    r.add_argument("input")
    r.add_argument("--map", default=None, help="write the vertex map and placements here")

    bo = sub.add_parser("bounds", parents=[common], help="randomness bounds for a pair")
    bo.add_argument("input")
    bo.add_argument("--pair", nargs=2)

    f = sub.add_parser("forbidden", parents=[common], help="forbidden-subgraph search")
    f.add_argument("input")
    f.add_argument("--d", type=int)
    return p


def run(argv: Sequence[str], stdin=None) -> CommandResult:
    parser = _parser()
    try:
        a = parser.parse_args(list(argv))
    except SystemExit as e:
        if e.code == 0:
            return CommandResult(0, {"command": "help"})
        return CommandResult(2, {"error": "invalid arguments", "argv": list(argv)})
    a.stdin = stdin if stdin is not None else sys.stdin
    cmd = a.command if not hasattr(a, "action") else f"{a.command} {a.action}"
    try:
        if a.command == "build":
            con = _build(a)
            obj = con.to_json()
            if a.out:
                _write(a.out, obj)
                res = CommandResult(0, {"construction": con.name, "vertices": con.graph.n,
                                        "edges": len(con.graph.edges),
                                        "output_sha256": hashlib.sha256(
                                            canonical_json(obj).encode()).hexdigest()})
            else:
                res = CommandResult(0, obj)
            return res
        ld = load(a.input, a.stdin, a.tol)
        handler = {
            "graph check": _graph_check, "graph gadgets": _graph_gadgets,
            "graph critical": _graph_critical, "graph extract": _graph_extract,
            "vectors graph": _vectors_graph, "vectors verify": _vectors_verify,
            "lp max-pair": _lp_max_pair, "lp table": _lp_table,
            "reduce": _reduce, "bounds": _bounds, "forbidden": _forbidden,
        }[cmd]
        res = handler(a, ld)
        verdict = dict(res.verdict)
        verdict.update({"command": cmd, "input_sha256": ld.sha256})
        if a.command == "graph" and a.out and "critical" in verdict and verdict["critical"]:
            _write(a.out, verdict["critical"])
        return CommandResult(res.code, verdict)
    except colorer.SearchBudgetExceeded as e:
        return CommandResult(2, {"command": cmd, "error": "search budget exceeded",
                                 "nodes": e.stats.nodes, "conflicts": e.stats.conflicts})
    except CliError as e:
        return CommandResult(2, {"command": cmd, "error": str(e)})
    except (ValueError, IndexError, colorer.ColoringError) as e:
        return CommandResult(2, {"command": cmd, "error": str(e)})


def main(argv: Optional[Sequence[str]] = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.text)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
