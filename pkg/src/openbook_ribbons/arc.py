"""Wires, arc diagrams and their cusped smoothings.

A wire lives on a single page angle ``theta``.  It is a chain of vertical
arcs on the tori: consecutive arcs are joined through a matched pair of
T-points on the slice ``theta``, and the first and last arc ends are the
two wire ends, which sit on binding vertices.  A binding vertex is the
horizontal circle ``z = const`` of one torus, so wire ends group into
vertices by ``(torus, z)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exceptions import (EpsilonTooLarge, InvalidDiagram, MalformedGeometry,
                         PreconditionViolation)
from .geometry import HALF, lift, sign, wrap
from .morse import MorseDiagram, partner_point
from .report import ReportBuilder, ValidationReport

START, END = "start", "end"


@dataclass(frozen=True)
class Arc:
    """Vertical arc from ``z_from`` to ``z_to`` along the shorter way."""

    torus_index: int
    z_from: Fraction
    z_to: Fraction

    def __post_init__(self):
        object.__setattr__(self, "z_from", wrap(self.z_from))
        object.__setattr__(self, "z_to", wrap(self.z_to))

    @property
    def length(self) -> Fraction:
        """Signed z-extent in ``(-1/2, 1/2]``."""
        return lift(self.z_to - self.z_from)

    def interval(self):
        """``(low, span)`` with the arc covering ``[low, low + span]`` mod 1."""
        ln = self.length
        return (self.z_from, ln) if ln >= 0 else (self.z_to, -ln)

    def contains(self, z) -> bool:
        lo, span = self.interval()
        return wrap(wrap(z) - lo) <= span


def _intervals_meet(a: Arc, b: Arc) -> bool:
    (la, sa), (lb, sb) = a.interval(), b.interval()
    return wrap(lb - la) <= sa or wrap(la - lb) <= sb


@dataclass(frozen=True)
class Wire:
    theta: Fraction
    arcs: Tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap(self.theta))
        object.__setattr__(self, "arcs", tuple(
            a if isinstance(a, Arc) else Arc(*a) for a in self.arcs))

    def end(self, which: str):
        if which == START:
            return (self.arcs[0].torus_index, self.arcs[0].z_from)
        return (self.arcs[-1].torus_index, self.arcs[-1].z_to)

    @property
    def z_extent(self) -> Fraction:
        return sum(abs(a.length) for a in self.arcs)


@dataclass(frozen=True)
class ArcDiagram:
    diagram: MorseDiagram
    wires: Tuple[Wire, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))

    def binding_vertices(self) -> List[Tuple[int, Fraction]]:
        return sorted({w.end(x) for w in self.wires for x in (START, END)})

    def vertex_index(self) -> Dict[Tuple[int, Fraction], int]:
        return {v: i for i, v in enumerate(self.binding_vertices())}

    def vertex_table(self):
        """Binding vertex -> incident wire ends in cyclic (theta) order."""
        table: Dict[Tuple[int, Fraction], list] = {v: [] for v in self.binding_vertices()}
        for wi, w in enumerate(self.wires):
            for x in (START, END):
                table[w.end(x)].append((w.theta, wi, x))
        return {v: [(wi, x) for _, wi, x in sorted(ends)] for v, ends in table.items()}

    def incidence(self) -> List[Tuple[int, int]]:
        idx = self.vertex_index()
        return [(idx[w.end(START)], idx[w.end(END)]) for w in self.wires]

    @property
    def euler_char(self) -> int:
        return len(self.binding_vertices()) - len(self.wires)


def on_skeleton(d: MorseDiagram, torus: int, theta, z) -> bool:
    """Is ``(theta, z)`` on a T-edge of ``torus``?  Vertex slices count."""
    theta, z = wrap(theta), wrap(z)
    for v in d.vertices:
        if v.torus_index == torus and v.theta == theta and v.z == z:
            return True
    return any(e.torus_index == torus and z in e.z_at(theta) for e in d.edges)


def validate_arc_diagram(a: ArcDiagram, d: Optional[MorseDiagram] = None) -> ValidationReport:
    """Issue codes: ``ThetaCollision``, ``UnmatchedInternalEnd``,
    ``OrphanEnd``, ``NonGenericWire``, ``OverlappingArcs``, ``DegenerateArc``."""
    d = d or a.diagram
    rb = ReportBuilder("arc")
    seen: Dict[Fraction, int] = {}
    for wi, w in enumerate(a.wires):
        if not w.arcs:
            raise MalformedGeometry(f"wire {wi} has no arcs")
        for ai, arc in enumerate(w.arcs):
            if not 0 <= arc.torus_index < d.n:
                raise MalformedGeometry(f"wire {wi} arc {ai}: torus out of range")
            if arc.length == 0:
                rb.add("DegenerateArc", "arc has zero length", wire=wi, arc=ai)
        if w.theta in seen:
            rb.add("ThetaCollision", f"wires {seen[w.theta]} and {wi} share theta",
                   wire=wi, theta=w.theta)
        seen.setdefault(w.theta, wi)
        if not d.is_generic(w.theta):
            rb.add("NonGenericWire", "wire lies on a vertex slice", wire=wi)
            continue
        for x in (START, END):
            t, z = w.end(x)
            if on_skeleton(d, t, w.theta, z):
                rb.add("OrphanEnd", "wire end lies on T, not on a binding vertex",
                       wire=wi, end=x)
        for ai in range(len(w.arcs) - 1):
            here, there = w.arcs[ai], w.arcs[ai + 1]
            ok = False
            for ei, e in enumerate(d.edges):
                if e.torus_index == here.torus_index and here.z_to in e.z_at(w.theta):
                    try:
                        other = partner_point(d, ei, w.theta, here.z_to)
                    except InvalidDiagram:
                        break
                    ok = (other.torus_index == there.torus_index
                          and other.z == there.z_from)
                    break
            if not ok:
                rb.add("UnmatchedInternalEnd",
                       "consecutive arcs are not joined through a matched T-pair",
                       wire=wi, arc=ai)
        for i in range(len(w.arcs)):
            for j in range(i + 1, len(w.arcs)):
                p, q = w.arcs[i], w.arcs[j]
                if p.torus_index == q.torus_index and _intervals_meet(p, q):
                    rb.add("OverlappingArcs", "arcs of one wire meet", wire=wi,
                           arcs=(i, j))
    return rb.build()


# ---------------------------------------------------------------------------
# cusped smoothing


def epsilon_bound(a: ArcDiagram) -> Fraction:
    """Half the least cyclic theta-gap from a wire to another wire or to a
    vertex slice of the Morse diagram."""
    wires = sorted({w.theta for w in a.wires})
    if not wires:
        return HALF
    others = sorted(set(wires) | set(a.diagram.vertex_thetas()))
    best = Fraction(1)
    for t in wires:
        for u in others:
            if u == t:
                continue
            gap = wrap(u - t)
            best = min(best, gap, 1 - gap)
    if len(others) == 1:
        best = Fraction(1)
    return best / 2


@dataclass(frozen=True)
class CuspedStrand:
    """Smoothing of one arc: a PL path with per-piece slope classes.

    ``kinds`` holds one of ``"vertical"``, ``"horizontal"``, ``"steep"``
    for each piece; the path uses lifted coordinates starting at
    ``points[0]`` (canonical) so that it may cross the square's edges.
    """

    wire: int
    arc: int
    torus_index: int
    points: Tuple[Tuple[Fraction, Fraction], ...]
    kinds: Tuple[str, ...]


@dataclass(frozen=True)
class CuspedArcDiagram:
    base: ArcDiagram
    epsilon: Fraction
    strands: Tuple[CuspedStrand, ...]

    def incidence(self):
        """Incidence read off the smoothed strands' wire ends."""
        ends = {}
        for s in self.strands:
            w = self.base.wires[s.wire]
            if s.arc == 0:
                ends[(s.wire, START)] = (s.torus_index, wrap(s.points[0][1]))
            if s.arc == len(w.arcs) - 1:
                ends[(s.wire, END)] = (s.torus_index, wrap(s.points[-1][1]))
        verts = sorted(set(ends.values()))
        idx = {v: i for i, v in enumerate(verts)}
        return [(idx[ends[(wi, START)]], idx[ends[(wi, END)]])
                for wi in range(len(self.base.wires))]


def _edge_line_through(d: MorseDiagram, torus: int, theta, z):
    """(edge index, slope) of the T-segment through ``(theta, z)``."""
    for ei, e in enumerate(d.edges):
        if e.torus_index != torus:
            continue
        for p, dd in e.segments():
            if dd[0] == 0:
                continue
            u = wrap(sign(dd[0]) * (theta - p[0]))
            if 0 <= u <= abs(dd[0]):
                if wrap(p[1] + dd[1] * (u / abs(dd[0]))) == z:
                    return ei, dd[1] / dd[0]
    raise InvalidDiagram(f"no T-edge through ({theta}, {z}) on torus {torus}")


def to_cusped(a: ArcDiagram, epsilon) -> CuspedArcDiagram:
    """Smooth every arc into a front piece of slope ``-1/epsilon``.

    Internal ends get a short vertical piece, wire ends a short horizontal
    one; the theta drift this causes is carried from arc to arc, and each
    T-crossing is re-solved exactly on the straight T-segment involved.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise PreconditionViolation("epsilon must be positive")
    bound = epsilon_bound(a)
    if eps >= bound:
        raise EpsilonTooLarge(eps, bound, "half the least wire gap")
    rep = validate_arc_diagram(a)
    if not rep.ok:
        raise PreconditionViolation("arc diagram is invalid: " + ", ".join(rep.codes()))
    d = a.diagram
    strands = []
    for wi, w in enumerate(a.wires):
        theta = Fraction(w.theta)  # lifted running theta
        z_start = w.arcs[0].z_from
        n = len(w.arcs)
        for ai, arc in enumerate(w.arcs):
            ln = lift(arc.z_to - z_start)
            if sign(ln) != sign(arc.length) or ln == 0:
                raise EpsilonTooLarge(eps, bound, "theta drift reverses an arc")
            sg = sign(ln)
            v = abs(arc.length) / 4
            if n == 1:
                # centre the steep piece on the wire
                theta = theta + eps * ln / 2
            pts = [(theta, z_start)]
            kinds = []
            zc = z_start
            if ai == 0:
                eta0 = eps * abs(arc.length) / 8
                pts.insert(0, (theta + sg * eta0, z_start))
                kinds.append("horizontal")
            if ai > 0:
                zc = z_start + sg * v
                pts.append((theta, zc))
                kinds.append("vertical")
            if ai == n - 1:
                z_end = z_start + ln
                span = z_end - zc
                theta_m = theta - eps * span
                pts.append((theta_m, z_end))
                kinds.append("steep")
                eta = eps * abs(arc.length) / 8
                pts.append((theta_m - sg * eta, z_end))
                kinds.append("horizontal")
                strands.append(CuspedStrand(wi, ai, arc.torus_index, tuple(pts), tuple(kinds)))
                continue
            ei, m = _edge_line_through(d, arc.torus_index, w.theta, arc.z_to)
            # T-segment: z = z_T + m (t - w.theta), lifted near z_start + ln
            z_T = z_start + lift(arc.z_to - z_start)
            denom = m + 1 / eps
            if denom == 0:
                raise EpsilonTooLarge(eps, bound, "steep piece parallel to T")
            # solve z_T + m (t - th) - sg v = zc - (t - theta) / eps
            t_hit = (zc + theta / eps - z_T + m * w.theta + sg * v) / denom
            z_hit = z_T + m * (t_hit - w.theta)
            if abs(t_hit - w.theta) > eps * w.z_extent or sign(z_hit - sg * v - zc) != sg:
                raise EpsilonTooLarge(eps, bound, "drift leaves the T-segment")
            pts.append((t_hit, z_hit - sg * v))
            kinds.append("steep")
            pts.append((t_hit, z_hit))
            kinds.append("vertical")
            strands.append(CuspedStrand(wi, ai, arc.torus_index, tuple(pts), tuple(kinds)))
            if not d.is_generic(t_hit) or wrap(z_hit) not in d.edges[ei].z_at(t_hit):
                raise EpsilonTooLarge(eps, bound, "drift leaves the T-segment")
            other = partner_point(d, ei, t_hit, z_hit)
            theta = t_hit
            z_start = other.z
    return CuspedArcDiagram(a, eps, tuple(strands))


def validate_cusped(c: CuspedArcDiagram) -> ValidationReport:
    """Slope classes, T-matching, closeness to the base wires, incidence."""
    rb = ReportBuilder("cusped-arc")
    eps = c.epsilon
    d = c.base.diagram
    by_wire: Dict[int, List[CuspedStrand]] = {}
    for s in c.strands:
        by_wire.setdefault(s.wire, []).append(s)
        for k, kind in enumerate(s.kinds):
            (t0, z0), (t1, z1) = s.points[k], s.points[k + 1]
            if kind == "vertical":
                good = t0 == t1 and z0 != z1
            elif kind == "horizontal":
                good = z0 == z1 and t0 != t1
            else:
                good = t0 != t1 and (z1 - z0) / (t1 - t0) == -1 / eps
            if not good:
                rb.add("SlopeViolation", f"{kind} piece has the wrong slope",
                       wire=s.wire, arc=s.arc, piece=k)
        w = c.base.wires[s.wire]
        for t, _ in s.points:
            if abs(t - w.theta) > eps * w.z_extent:
                rb.add("TooFar", "strand leaves the epsilon band of its wire",
                       wire=s.wire, arc=s.arc)
                break
    for wi, group in by_wire.items():
        group.sort(key=lambda s: s.arc)
        for s, nxt in zip(group, group[1:]):
            t, z = s.points[-1]
            t2, z2 = nxt.points[0]
            ok = t == t2 and on_skeleton(d, s.torus_index, t, z)
            if ok:
                try:
                    ei, _ = _edge_line_through(d, s.torus_index, wrap(t), wrap(z))
                    other = partner_point(d, ei, t, z)
                    ok = other.torus_index == nxt.torus_index and other.z == wrap(z2)
                except InvalidDiagram:
                    ok = False
            if not ok:
                rb.add("UnmatchedInternalEnd", "smoothed arcs are not T-matched",
                       wire=wi, arc=s.arc)
    if c.incidence() != c.base.incidence():
        rb.add("GraphMismatch", "smoothing changed the incidence graph")
    return rb.build()


# ---------------------------------------------------------------------------


def arc_diagram_summary(a: ArcDiagram) -> dict:
    """Isotopy-invariant data used for comparisons."""
    crossings = sorted(
        (arc.torus_index, str(arc.z_to)) for w in a.wires for arc in w.arcs[:-1])
    return {"vertices": len(a.binding_vertices()), "wires": len(a.wires),
            "t_crossings": len(crossings), "euler_char": a.euler_char}


def summary_json(a: ArcDiagram) -> str:
    return json.dumps(arc_diagram_summary(a), sort_keys=True)
