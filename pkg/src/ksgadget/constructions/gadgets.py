"""Explicit 01-gadgets: the Clifton gadget and its lifts, the two-case
parametric gadget for arbitrary overlap, the 40-vector state-dependent set,
and two families of extended gadgets."""

from __future__ import annotations

from fractions import Fraction

from .. import scalars as S
from ..scalars import Quad, ctx, to_mp
from ..vectors import VectorSet, embed_dim, overlap
from .base import Construction, approx_vec, fmt, mp_vec, place, realize

CLIFTON_VECTORS = (
    (-1, 1, 1), (1, 1, 0), (0, 1, -1), (0, 0, 1),
    (1, 0, 0), (1, -1, 0), (0, 1, 1), (1, 1, -1),
)


def build_clifton() -> Construction:
    """Eight integer vectors in R^3; u1 and u8 can never both be 1."""
    labels = [f"u{i}" for i in range(1, 9)]
    return realize("clifton", CLIFTON_VECTORS, labels, (0, 7), {}, 3, tol=0)


def build_clifton_lift(d: int) -> Construction:
    """Clifton plus d-3 basis vectors orthogonal to everything: 5+d vertices, omega = d."""
    if d < 3:
        raise ValueError("the Clifton lift needs d >= 3")
    V = embed_dim(VectorSet(3, CLIFTON_VECTORS), d, complete=True)
    labels = [f"u{i}" for i in range(1, 9)] + [f"e{k}" for k in range(4, d + 1)]
    return realize("clifton-lift", V.vectors, labels, (0, 7), {"d": d}, d, tol=0)


# parametric gadget for an arbitrary overlap

# orthogonalities of the 22-vertex block (1-based labels); they hold for
# every 0 < x <= 1
INDUCED_EDGES = (
    (1, 2), (1, 3), (1, 4), (2, 5), (2, 19), (3, 6), (3, 7), (3, 10), (3, 11),
    (3, 14), (3, 15), (4, 18), (4, 21), (5, 6), (5, 19), (6, 7), (7, 8), (8, 9),
    (8, 20), (9, 10), (9, 20), (10, 11), (11, 12), (12, 13), (12, 20), (13, 14),
    (13, 20), (14, 15), (15, 16), (16, 17), (16, 20), (17, 18), (17, 20), (18, 21),
    (19, 22), (20, 22), (21, 22),
)


def outer_label(k: int) -> int:
    """Label in the 43-vertex graph of vertex k of the second 22-vertex block."""
    return {1: 20, 2: 23, 3: 22}.get(k, 20 + k)


def pattern_edges(case: str) -> list:
    """Orthogonalities the gadget_pair realization must satisfy, as 1-based labels."""
    if case == "i":
        return list(INDUCED_EDGES)
    edges = set(INDUCED_EDGES)
    edges |= {tuple(sorted((outer_label(a), outer_label(b)))) for a, b in INDUCED_EDGES}
    edges |= {(1, 43), (20, 43), (22, 43), (42, 43)}
    return sorted(edges)


def _y_of(x):
    q = 1 + x * x
    disc = q ** 6 - 16 * x ** 14 * q
    if S.sign(disc) < 0:
        raise AssertionError("negative discriminant for y; x must lie in (0, 1]")
    return (q ** 3 + S.sqrt(disc)) / (4 * x ** 8)


def induced_vectors(x, y=None) -> list:
    """The 22 (unnormalized) vectors of the induced block at parameter x."""
    x = S.as_scalar(x)
    y = _y_of(x) if y is None else S.as_scalar(y)
    q = 1 + x * x
    return [
        (1, 0, 0), (0, 1, -1), (0, 1, 0), (0, y, 1), (2 * x, 1, 1), (-1, 0, 2 * x),
        (-2 * x, 0, -1), (x, 1, -2 * x ** 2), (2 * x ** 3, 2 * x ** 2, q),
        (-q, 0, 2 * x ** 3), (2 * x ** 3, 0, q), (x * q, q, -2 * x ** 4),
        (2 * x ** 5, 2 * x ** 4, q ** 2), (-(q ** 2), 0, 2 * x ** 5),
        (2 * x ** 5, 0, q ** 2), (x * q ** 2, q ** 2, -2 * x ** 6),
        (2 * x ** 7, 2 * x ** 6, q ** 3), (-x * (1 + y * y), -1, y),
        (1, -x, -x), (1, -x, 0), (1, -x, x * y), (x, 1, 0),
    ]


def _rot45(v):
    # (a, b, c) -> (a+b, -a+b, sqrt2 c): sqrt2 times a rotation taking e1 to
    # (1,-1,0)/sqrt2 and e2 to (1,1,0)/sqrt2
    a, b, c = (S.as_scalar(t) for t in v)
    return (a + b, -a + b, Quad(0, 1, 2) * c)


def gadget_case(o) -> str:
    o = S.as_scalar(o)
    if S.sign(o) <= 0 or S.sign(o - 1) >= 0:
        raise ValueError("overlap must lie in (0, 1)")
    return "i" if S.sign(o * o - Fraction(1, 2)) <= 0 else "ii"


def build_gadget_pair(o) -> Construction:
    """Gadget in R^3 whose distinguished vectors have overlap ``o``.

    For o <= 1/sqrt2 the 22-vertex block suffices; above that two blocks are
    glued along (1,-1,0), (1,1,0) and closed with (0,0,1).
    """
    o = S.as_scalar(o)
    case = gadget_case(o)
    if case == "i":
        x = o / S.sqrt(1 - o * o)
        vecs = induced_vectors(x)
        labels = [f"u{i}" for i in range(1, 23)]
        return realize("gadget-pair", vecs, labels, (0, 21),
                       {"overlap": fmt(o), "case": "i", "x": fmt(x)}, 3)
    a = 2 * o * o - 1
    x = a / (1 + S.sqrt(1 - a * a))  # root of a x^2 - 2x + a in (0, 1)
    inner = induced_vectors(1, Quad(2, 1, 2))
    outer = [_rot45(v) for v in induced_vectors(x)]
    by_label = {k + 1: v for k, v in enumerate(inner)}
    for k, v in enumerate(outer, start=1):
        if k not in (1, 3):  # shared with the inner block
            by_label[outer_label(k)] = v
    by_label[43] = (0, 0, 1)
    vecs = [by_label[i] for i in range(1, 44)]
    labels = [f"u{i}" for i in range(1, 44)]
    return realize("gadget-pair", vecs, labels, (0, 41),
                   {"overlap": fmt(o), "case": "ii", "x": fmt(x)}, 3)


# 40-vector state-dependent set

def _sd40_vectors() -> list:
    b = Quad(Fraction(-4, 3), Fraction(1, 3), 7)
    r7 = Quad(0, 1, 7)
    r2 = Quad(0, 1, 2)
    V = {
        1: (1, -1, 0), 2: (1, 1, 1), 3: (1, 1, 0), 4: (1, 1, b), 5: (-2, 1, 1),
        6: (1, -1, 3), 7: (3, -3, -2), 8: (2, 0, 3), 9: (-3, 0, 2), 10: (-2, 2, -3),
        11: (3, -3, -4), 12: (4, 0, 3), 13: (-3, 0, 4), 14: (-4, 4, -3), 15: (3, -3, -8),
        16: (8, 0, 3), 17: (-3, 0, 8), 18: (-8, 4 + r7, -3), 19: (0, 1, -1), 20: (0, 1, 0),
        21: (0, -3 + 8 * b, -16 - 3 * b), 22: (1, 0, 0), 23: (1, 0, -1), 24: (2 - r2, 0, 1),
        25: (1, -2, 1), 26: (0, 1, 2), 27: (0, 2, -1), 28: (1, -1, -2), 29: (1, -1, 1),
        30: (0, 1, 1), 31: (0, 1, -1), 32: (-1, 1, 1), 33: (-1, 1, -2), 34: (0, 2, 1),
        35: (0, 1, -2), 36: (2, -2, -1), 37: (1, -1, 4), 38: (-2 - r2, 6 - r2, 2),
        41: (1, 1, -2 + r2), 43: (0, 0, 1),
    }
    V[39], V[40], V[42] = V[2], V[3], V[1]
    return [V[i] for i in range(1, 44)]


def build_state_dependent_40() -> Construction:
    """43 listed vectors with u39=u2, u40=u3, u42=u1; u1 is forced to 0."""
    labels = [f"u{i}" for i in range(1, 44)]
    return realize("state-dependent-40", _sd40_vectors(), labels, (0,), {}, 3)


# nested extended gadget

def _step_vectors(x, a, b=1, c=1) -> dict:
    """One Clifton layer with u4 = e1 and u5 along (x, 1, 0)."""
    return {
        4: (1, 0, 0), 5: (x, 1, 0), 8: (a, b, c), 6: (0, -c, b),
        7: (c, -c * x, -a + b * x), 2: (0, b, c),
        3: (-a + b * x, a * x - b * x * x, -c - c * x * x),
        1: (-b * c - a * c * x, -a * c + b * c * x, a * b - b * b * x),
    }


def step_overlap(x, a):
    """|<u1|u8>| of a layer with b = c = 1 (mp arithmetic)."""
    x, a = to_mp(x), to_mp(a)
    num = abs(a * (1 + a * x))
    den = ctx.sqrt((a * a + 2) * ((1 + a * x) ** 2 + 2 * (a - x) ** 2))
    return num / den


def _solve_a(x, target):
    """a in [0, x + sqrt(1+x^2)] with step_overlap(x, a) = target, by bisection."""
    x, target = to_mp(x), to_mp(target)
    lo, hi = ctx.mpf(0), x + ctx.sqrt(1 + x * x)
    for _ in range(200):
        mid = (lo + hi) / 2
        if step_overlap(x, mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < ctx.mpf(10) ** -34:
            break
    return (lo + hi) / 2


def nested_overlap(k: int) -> Fraction:
    return Fraction(k, k + 2)


def nested_levels(target) -> int:
    """Smallest k whose default nested gadget reaches overlap ``target``."""
    t = S.as_scalar(target)
    if S.sign(t) <= 0 or S.sign(t - 1) >= 0:
        raise ValueError("overlap must lie in (0, 1)")
    k = 1
    while S.sign(t - nested_overlap(k)) > 0:
        k += 1
    return k


def build_nested_extended(k: int, target_overlap=None) -> Construction:
    """k nested Clifton layers; the outer pair has overlap k/(k+2) or ``target_overlap``."""
    if k < 1:
        raise ValueError("need k >= 1")
    top = nested_overlap(k)
    if target_overlap is not None:
        t = S.as_scalar(target_overlap)
        if S.sign(t) <= 0 or to_mp(t) > to_mp(top) + ctx.mpf(10) ** -30:
            raise ValueError(f"target overlap must lie in (0, {top}] for k={k}")
    vecs: list = []
    labels: list = []
    pair = None
    xs = []
    for step in range(1, k + 1):
        if step == 1:
            x = Fraction(0)
        else:
            o = overlap(vecs[pair[0]], vecs[pair[1]])
            x = to_mp(o) / ctx.sqrt(1 - to_mp(o) ** 2)
            moved = place(vecs, pair[0], pair[1], (1, 0, 0), (x, 1, 0))
            vecs = [approx_vec(v) for v in moved]
        if step == k and target_overlap is not None:
            a = _solve_a(x, target_overlap)
        elif step == 1:
            a = Fraction(1)
        else:
            a = to_mp(x) + ctx.sqrt(1 + to_mp(x) ** 2)
        x, a = S.as_scalar(x), S.as_scalar(a)
        layer = _step_vectors(x, a)
        new = (1, 2, 3, 6, 7, 8) if step > 1 else (1, 2, 3, 4, 5, 6, 7, 8)
        base = len(vecs)
        for i in new:
            vecs.append(layer[i])
            labels.append(f"u{i}.{step}")
        pair = (base + new.index(1), base + new.index(8))
        xs.append(fmt(x))
    params = {"k": k, "x": xs}
    if target_overlap is not None:
        params["target_overlap"] = fmt(target_overlap)
    return realize("nested-extended", vecs, labels, pair, params, 3)


# alternative extended gadget

def alt_condition(x, t: int) -> bool:
    x = S.as_scalar(x)
    return S.sign((1 - x * x) ** 3 - 4 * x ** (4 * t)) >= 0


def minimal_t(x, limit: int = 10 ** 6) -> int:
    t = 1
    while not alt_condition(x, t):
        t += 1
        if t > limit:
            raise ValueError("no repetition count found below the search limit")
    return t


def build_alt_extended(x, t: int) -> Construction:
    """Ten vectors plus t repeating units of four; pair (v1, v2) has overlap x."""
    xs = S.as_scalar(x)
    if S.sign(xs) <= 0 or S.sign(xs - 1) >= 0:
        raise ValueError("x must lie in (0, 1)")
    if t < 1:
        raise ValueError("need t >= 1")
    if not alt_condition(xs, t):
        raise ValueError(f"(1-x^2)^3 < 4x^(4t) for t={t}; the smallest valid t is {minimal_t(xs)}")
    x = to_mp(xs)
    s = ctx.sqrt(1 - x * x)
    w = 1 - x * x
    disc = w * (w ** 3 - 4 * x ** (4 * t))
    y = ctx.sqrt((w ** 2 + 2 * x ** (4 * t - 2) - ctx.sqrt(disc))
                 / (2 * w * (w + x ** (4 * t - 2))))
    r = ctx.sqrt(1 - y * y)
    V = [
        (1, 0, 0), (x, s, 0), (0, x, -s), (-w, x * s, x * x), (x, w * s, x * w),
        (0, y, r), (-s * r, x * r, -x * y), (x, (1 - y * y) * s, -y * s * r),
        (0, 1, 0), (-s, x, 0),
    ]
    for u in range(1, t + 1):
        V += [
            (-w, 0, x ** (2 * (u - 1))), (x ** (2 * (u - 1)), 0, w),
            (-x * w, -w * s, x ** (2 * u - 1)), (x ** (2 * u), x ** (2 * u - 1) * s, w),
        ]
    vecs = [approx_vec(mp_vec(v)) for v in V]
    labels = [f"v{i}" for i in range(1, len(V) + 1)]
    return realize("alt-extended", vecs, labels, (0, 1),
                   {"x": fmt(xs), "t": t, "y": ctx.nstr(y, 30)}, 3)


__all__ = [
    "CLIFTON_VECTORS", "INDUCED_EDGES", "build_alt_extended", "build_clifton",
    "build_clifton_lift", "build_gadget_pair", "build_nested_extended",
    "build_state_dependent_40", "gadget_case", "induced_vectors", "minimal_t",
    "nested_levels", "nested_overlap", "outer_label", "pattern_edges", "step_overlap",
]
