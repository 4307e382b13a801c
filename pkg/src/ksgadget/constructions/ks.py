"""Kochen-Specker sets from a 01-gadget.

A gadget with distinguished (v1, v2) yields the implication
f(v1) = 1  =>  f(v2perp) = 1, where v2perp is the vector orthogonal to v2 in
span(v1, v2). Chaining p+1 rotated copies whose total angle is an odd multiple
of pi/2 forces f(b1) = 1 => f(b2) = 1 for orthogonal b1, b2. Closing d such
chains cyclically around a basis leaves no valid coloring.
"""

from __future__ import annotations

from ..scalars import ctx
from .base import (Construction, apply, approx_vec, axpy, complete_frame, dot, frame_map,
                   mp_vec, realize, unit)

ANGLE_TOL = 1e-12


def _rotation(e, t, d):
    """Rotation in span(e, t) taking unit e to the ray of t, identity elsewhere."""
    c = dot(e, t)
    if c < 0:
        t = [-x for x in t]
        c = -c
    g = unit(axpy(-c, e, t))
    angle = ctx.acos(min(c, ctx.mpf(1)))
    src = complete_frame([e, g], d)
    ca, sa = ctx.cos(angle), ctx.sin(angle)
    dst = [axpy(ca, e, [sa * x for x in g]), axpy(-sa, e, [ca * x for x in g])] + src[2:]
    return frame_map(src, dst), angle


def reachable_interval(c, s) -> tuple:
    """Angles theta~ reachable by the doubling step, as (lo, hi) in radians."""
    lo_cos = max(s * s - c * c, ctx.mpf(0))
    return ctx.mpf(0), ctx.acos(lo_cos)


def build_ks_from_gadget(gadget: Construction, p: int, q: int) -> Construction:
    """KS set in dimension d from an expanded gadget; target angle q*pi/(2p), q odd.

    When the gadget's own angle already matches (case i) the chains use it
    directly; otherwise the gadget is first concatenated with a rotated copy
    whose free parameter is chosen to hit the target angle (case ii).
    """
    if gadget.vectors is None:
        raise ValueError("KS synthesis needs an expanded gadget")
    if q % 2 == 0 or q < 1 or p <= q:
        raise ValueError("need q odd and 1 <= q < p")
    i1, i2 = gadget.pair
    V = [mp_vec(v) for v in gadget.vectors.vectors]
    d = gadget.vectors.d
    if d < 3:
        raise ValueError("KS synthesis needs d >= 3")
    base_labels = list(gadget.graph.labels or [str(i) for i in range(len(V))])
    v1 = unit(V[i1])
    v2 = unit(V[i2])
    c = dot(v1, v2)
    if c < 0:
        v2, c = [-x for x in v2], -c
    if c < ctx.mpf(10) ** -30 or c > 1 - ctx.mpf(10) ** -30:
        raise ValueError("distinguished vectors must be neither orthogonal nor parallel")
    s = ctx.sqrt(1 - c * c)
    f = unit(axpy(-c, v1, v2))
    v2perp = axpy(s, v1, [-c * x for x in f])
    ws = complete_frame([v1, f], d)[2:]
    gp = V + [v2perp] + ws
    gp_labels = base_labels + ["v2perp"] + [f"w{k}" for k in range(1, d - 1)]

    theta = ctx.acos(s)
    target = q * ctx.pi / (2 * p)
    if abs(ctx.pi / (2 * theta) - ctx.mpf(p) / q) < ANGLE_TOL:
        case = "i"
        g2, g2_labels, t = gp, gp_labels, v2perp
    else:
        case = "ii"
        cos_t = ctx.cos(target)
        cphi = None
        for sgn in (1, -1):
            cand = (sgn * cos_t - s * s) / (c * c)
            if abs(cand) <= 1:
                cphi = cand
                break
        if cphi is None:
            lo, hi = reachable_interval(c, s)
            raise ValueError(
                f"target angle {ctx.nstr(target, 12)} rad is unreachable; reachable "
                f"interval is ({ctx.nstr(lo, 12)}, {ctx.nstr(hi, 12)}] rad")
        sphi = ctx.sqrt(1 - cphi * cphi)
        w1 = ws[0]
        v2p = axpy(cphi, v2, [sphi * x for x in w1])
        w1p = axpy(-sphi, v2, [cphi * x for x in w1])
        U = frame_map([v1, f] + ws, [v2perp, [-x for x in v2p], w1p] + ws[1:])
        g2 = gp + [apply(U, x) for x in gp]
        g2_labels = gp_labels + [lab + "'" for lab in gp_labels]
        t = apply(U, v2perp)

    R1, angle = _rotation(v1, t, d)
    if abs(angle - target) > ANGLE_TOL:
        raise AssertionError("concatenated gadget misses the target angle")
    chain, chain_labels = [], []
    cur = g2
    for i in range(p + 1):
        chain += cur
        chain_labels += [f"{lab}@{i}" for lab in g2_labels]
        cur = [apply(R1, x) for x in cur]
    b1 = v1
    b2 = unit(_power(R1, v1, p))
    if abs(dot(b1, b2)) > ctx.mpf(10) ** -25:
        raise AssertionError("chain endpoints are not orthogonal")
    basis = complete_frame([b1, b2], d)
    cyc = frame_map(basis, basis[1:] + basis[:1])
    vecs, labels = [], []
    cur = chain
    for j in range(d):
        vecs += cur
        labels += [f"{lab}#{j}" for lab in chain_labels]
        cur = [apply(cyc, x) for x in cur]
    vecs += basis
    labels += [f"b{k}" for k in range(1, d + 1)]
    n0 = len(vecs) - d
    params = {"p": p, "q": q, "case": case, "theta": ctx.nstr(theta, 30),
              "target": ctx.nstr(target, 30), "source": gadget.name}
    return realize("ks-from-gadget", [approx_vec(v) for v in vecs], labels,
                   tuple(range(n0, n0 + d)), params, d)


def _power(M, v, k: int):
    for _ in range(k):
        v = apply(M, v)
    return v


def doubled_angle(gadget: Construction):
    """arccos |<v1| U |v2perp>| for the plain doubling unitary U = rotation v1 -> v2perp."""
    i1, i2 = gadget.pair
    V = [mp_vec(v) for v in gadget.vectors.vectors]
    d = gadget.vectors.d
    v1, v2 = unit(V[i1]), unit(V[i2])
    c = dot(v1, v2)
    if c < 0:
        v2, c = [-x for x in v2], -c
    s = ctx.sqrt(1 - c * c)
    f = unit(axpy(-c, v1, v2))
    v2perp = axpy(s, v1, [-c * x for x in f])
    R, theta = _rotation(v1, v2perp, d)
    return theta, ctx.acos(abs(dot(v1, apply(R, v2perp))))
