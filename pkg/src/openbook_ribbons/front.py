"""Fronts of Legendrian graphs and links on a Morse diagram.

A front is a set of PL strands on the tori.  Away from the T-graph every
segment has strictly negative slope ``dz/dtheta``; a strand may end on the
interior of a T-edge, in which case its last segment is horizontal, and the
end must be matched by a partner end on the paired T-point of the same slice
approaching from the other side.  Cusps are breakpoints where the strand
reverses its theta direction.

Crossing depth follows ``x = -slope``: the strand with slope closer to zero
lies nearer the binding.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exceptions import (GenerationFailure, InvalidDiagram, MalformedGeometry,
                         PointNotOnStrand, TangentialCrossing, UnknownName)
from .geometry import (Point, along, delta, lift, point, sign, slope,
                       torus_segment_intersections, wrap)
from .morse import (LEFT, RIGHT, MorseDiagram, builtin_diagram, partner_point,
                    validate_morse_diagram)
from .report import ReportBuilder, ValidationReport

CLOSED, ON_T, AT_VERTEX = "closed", "T", "V"
START, END = "start", "end"


@dataclass(frozen=True)
class End:
    """Endpoint descriptor of a strand."""

    kind: str
    ref: int = -1
    side: str = ""

    def __str__(self):
        if self.kind == CLOSED:
            return "closed"
        if self.kind == ON_T:
            return f"T:{self.ref}:{self.side}"
        return f"V:{self.ref}"

    @classmethod
    def parse(cls, text: str) -> "End":
        parts = text.split(":")
        if parts == ["closed"]:
            return cls(CLOSED)
        if parts[0] == "T" and len(parts) == 3 and parts[2] in (LEFT, RIGHT):
            return cls(ON_T, int(parts[1]), parts[2])
        if parts[0] == "V" and len(parts) == 2:
            return cls(AT_VERTEX, int(parts[1]))
        raise ValueError(f"bad end descriptor {text!r}")


CLOSED_END = End(CLOSED)


@dataclass(frozen=True)
class FrontStrand:
    torus_index: int
    points: Tuple[Point, ...]
    cusps: frozenset = frozenset()
    start: End = CLOSED_END
    end: End = CLOSED_END

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(point(t, z) for t, z in self.points))
        object.__setattr__(self, "cusps", frozenset(self.cusps))

    @property
    def closed(self) -> bool:
        return self.start.kind == CLOSED

    def segments(self):
        return [(p, delta(p, q)) for p, q in zip(self.points, self.points[1:])]

    def terminal(self, k: int) -> bool:
        last = len(self.points) - 2
        return (k == 0 and self.start.kind == ON_T) or (k == last and self.end.kind == ON_T)

    def breakpoints(self):
        """Indices of interior breakpoints (the closing point of a loop is 0)."""
        n = len(self.points)
        if self.closed:
            return list(range(0, n - 1))
        return list(range(1, n - 1))

    def reverses_at(self, i: int) -> bool:
        segs = self.segments()
        if self.closed and i == 0:
            before, after = segs[-1][1], segs[0][1]
        else:
            before, after = segs[i - 1][1], segs[i][1]
        return sign(before[0]) != sign(after[0])

    def end_point(self, which: str) -> Point:
        return self.points[0] if which == START else self.points[-1]

    def end_desc(self, which: str) -> End:
        return self.start if which == START else self.end

    def terminal_side(self, which: str) -> str:
        """Side of the T-edge on which the terminal segment lies."""
        if which == START:
            dd = delta(self.points[0], self.points[1])
        else:
            dd = delta(self.points[-1], self.points[-2])
        return LEFT if dd[0] < 0 else RIGHT


@dataclass(frozen=True)
class FrontVertex:
    torus_index: int
    theta: Fraction
    z: Fraction
    ends: Tuple[Tuple[int, str], ...] = ()  # cyclic order of (strand, start|end)

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap(self.theta))
        object.__setattr__(self, "z", wrap(self.z))
        object.__setattr__(self, "ends", tuple((int(s), w) for s, w in self.ends))

    @property
    def tz(self) -> Point:
        return (self.theta, self.z)


@dataclass(frozen=True)
class Crossing:
    strand_a: int
    seg_a: int
    strand_b: int
    seg_b: int
    torus_index: int
    theta: Fraction
    z: Fraction
    near: int  # strand nearer the binding (smaller x = -slope)

    @property
    def far(self) -> int:
        return self.strand_b if self.near == self.strand_a else self.strand_a


@dataclass(frozen=True)
class GraphFront:
    diagram: MorseDiagram
    strands: Tuple[FrontStrand, ...] = ()
    vertices: Tuple[FrontVertex, ...] = ()
    crossings: Tuple[Crossing, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(self.strands))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "crossings", tuple(self.crossings))

    def cusp_count(self) -> int:
        return sum(len(s.cusps) for s in self.strands)


# ---------------------------------------------------------------------------
# contacts between strands


def _contacts(f: GraphFront):
    """Yield every contact between two front segments.

    Each item is ``(i, k, j, l, s, u)`` with strand/segment indices and the
    segment parameters of the contact, or ``(i, k, j, l, "overlap")``.
    """
    segs = []
    for i, s in enumerate(f.strands):
        for k, (p, dd) in enumerate(s.segments()):
            segs.append((s.torus_index, i, k, p, dd))
    for a in range(len(segs)):
        ta, i, k, pa, da = segs[a]
        for b in range(a + 1, len(segs)):
            tb, j, l, pb, db = segs[b]
            if ta != tb:
                continue
            for hit in torus_segment_intersections(pa, da, pb, db):
                if hit == "overlap":
                    yield (i, k, j, l, "overlap")
                else:
                    yield (i, k, j, l) + hit


def _allowed_touch(f: GraphFront, i, k, j, l, s, u) -> bool:
    si, sj = f.strands[i], f.strands[j]
    if i == j:
        nseg = len(si.points) - 1
        if abs(k - l) == 1 and {s, u} <= {0, 1}:
            first_param = s if k < l else u
            return first_param == 1
        if si.closed and {k, l} == {0, nseg - 1}:
            pk = s if k == 0 else u
            return pk == 0
    # different strands (or far-apart segments) may meet only at a shared
    # graph vertex, each at one of its own endpoints
    if s not in (0, 1) or u not in (0, 1):
        return False
    nseg_i = len(si.points) - 1
    nseg_j = len(sj.points) - 1
    ei = START if (k == 0 and s == 0) else END if (k == nseg_i - 1 and s == 1) else None
    ej = START if (l == 0 and u == 0) else END if (l == nseg_j - 1 and u == 1) else None
    if ei is None or ej is None:
        return False
    di, dj = si.end_desc(ei), sj.end_desc(ej)
    return di.kind == AT_VERTEX and dj.kind == AT_VERTEX and di.ref == dj.ref


def find_crossings(f: GraphFront):
    """Transverse double points, plus a list of illegal contacts."""
    crossings, bad = [], []
    seen = {}
    for item in _contacts(f):
        i, k, j, l = item[:4]
        if item[4] == "overlap":
            bad.append((i, k, j, l, "segments overlap"))
            continue
        s, u = item[4], item[5]
        if _allowed_touch(f, i, k, j, l, s, u):
            continue
        if s in (0, 1) or u in (0, 1):
            bad.append((i, k, j, l, "contact at a breakpoint or endpoint"))
            continue
        p, dd = f.strands[i].segments()[k]
        q, ee = f.strands[j].segments()[l]
        if cross_slopes_equal(dd, ee):
            bad.append((i, k, j, l, "tangential crossing"))
            continue
        pt = along(p, dd, s)
        key = (f.strands[i].torus_index, pt)
        if key in seen:
            bad.append((i, k, j, l, "triple point"))
            continue
        seen[key] = True
        near = _nearer(i, dd, j, ee)
        crossings.append(Crossing(i, k, j, l, f.strands[i].torus_index,
                                  pt[0], pt[1], near))
    crossings.sort(key=lambda c: (c.torus_index, c.theta, c.z))
    return crossings, bad


def cross_slopes_equal(dd, ee) -> bool:
    return dd[0] * ee[1] == dd[1] * ee[0]


def depth(dd) -> Fraction:
    """``x = -slope``; zero for horizontal segments."""
    s = slope(dd)
    if s is None:
        raise TangentialCrossing("vertical front segment has no depth")
    return -s


def _nearer(i, dd, j, ee):
    xi, xj = depth(dd), depth(ee)
    if xi == xj:
        raise TangentialCrossing(f"strands {i} and {j} cross with equal slopes")
    return i if xi < xj else j


def resolve_crossings(f: GraphFront) -> GraphFront:
    crossings, bad = find_crossings(f)
    for i, k, j, l, why in bad:
        if why in ("tangential crossing", "segments overlap"):
            raise TangentialCrossing(f"strands {i} and {j}: {why}")
    return replace(f, crossings=tuple(crossings))


# ---------------------------------------------------------------------------
# validation


def _on_skeleton(d: MorseDiagram, torus: int, pt: Point) -> bool:
    for e in d.edges:
        if e.torus_index != torus:
            continue
        for p, dd in e.segments():
            r = torus_segment_intersections(p, dd, pt, (Fraction(0), Fraction(0)))
            if r:
                return True
    return False


def _t_end_record(f: GraphFront, si: int, which: str):
    s = f.strands[si]
    desc = s.end_desc(which)
    pt = s.end_point(which)
    return desc.ref, pt[0], pt[1], desc.side


def end_partners(f: GraphFront) -> Dict[Tuple[int, str], Tuple[int, str]]:
    """Map each T-end ``(strand, start|end)`` to its matched partner end.

    Unmatched ends are absent from the map.
    """
    d = f.diagram
    index = {}
    for si, s in enumerate(f.strands):
        for which in (START, END):
            desc = s.end_desc(which)
            if desc.kind == ON_T:
                e, t, z, side = _t_end_record(f, si, which)
                index[(e, t, z, side)] = (si, which)
    out = {}
    for (e, t, z, side), key in index.items():
        try:
            other = partner_point(d, e, t, z)
        except (InvalidDiagram, Exception):
            continue
        want = (other.edge, t, other.z, RIGHT if side == LEFT else LEFT)
        if want in index:
            out[key] = index[want]
    return out


def validate_front(f: GraphFront, d: Optional[MorseDiagram] = None) -> ValidationReport:
    """Check the front conditions against the Morse diagram.

    Issue codes: ``DanglingEnd``, ``SlopeViolation``, ``UnmatchedEnd``,
    ``CuspOnSkeleton``, ``BadCrossing``, ``IsolatedVertex``.
    """
    if d is None:
        d = f.diagram
    else:
        f = replace(f, diagram=d)
    rb = ReportBuilder("front")
    nv = len(f.vertices)
    for si, s in enumerate(f.strands):
        if not 0 <= s.torus_index < d.n:
            raise MalformedGeometry(f"strand {si}: torus out of range")
        if len(s.points) < 2:
            raise MalformedGeometry(f"strand {si}: fewer than two points")
        if (s.start.kind == CLOSED) != (s.end.kind == CLOSED):
            raise MalformedGeometry(f"strand {si}: only one end is 'closed'")
        if s.closed and (s.points[0] != s.points[-1] or len(s.points) < 4):
            raise MalformedGeometry(f"strand {si}: closed strand must repeat its "
                                    "first point and have three distinct points")
        for k, (p, dd) in enumerate(s.segments()):
            if dd == (0, 0):
                raise MalformedGeometry(f"strand {si}: zero-length segment {k}")
        for c in s.cusps:
            if c not in s.breakpoints():
                raise MalformedGeometry(f"strand {si}: cusp index {c} is not a breakpoint")

        segs = s.segments()
        if all(s.terminal(k) for k in range(len(segs))):
            rb.add("SlopeViolation", "strand has no segment of negative slope", strand=si)
        for k, (p, dd) in enumerate(segs):
            if s.terminal(k):
                if dd[1] != 0 or dd[0] == 0:
                    rb.add("SlopeViolation", "segment ending on T must be horizontal",
                           strand=si, segment=k)
            elif dd[0] == 0 or dd[1] / dd[0] >= 0:
                rb.add("SlopeViolation", "slope is not negative", strand=si, segment=k)
        for i in s.breakpoints():
            rev = s.reverses_at(i)
            if rev and i not in s.cusps:
                rb.add("SlopeViolation", "unmarked theta reversal", strand=si, point=i)
            elif not rev and i in s.cusps:
                rb.add("SlopeViolation", "cusp marker without reversal", strand=si, point=i)
            if i in s.cusps and _on_skeleton(d, s.torus_index, s.points[i]):
                rb.add("CuspOnSkeleton", "cusp lies on T", strand=si, point=i)

        for which in (START, END):
            desc = s.end_desc(which)
            pt = s.end_point(which)
            if desc.kind == ON_T:
                if not 0 <= desc.ref < len(d.edges):
                    rb.add("DanglingEnd", "end references a missing T-edge",
                           strand=si, end=which)
                    continue
                e = d.edges[desc.ref]
                if (e.torus_index != s.torus_index or not d.is_generic(pt[0])
                        or pt[1] not in e.z_at(pt[0])):
                    rb.add("DanglingEnd", "end is not in the interior of its T-edge",
                           strand=si, end=which)
                    continue
                if s.terminal_side(which) != desc.side:
                    rb.add("UnmatchedEnd", "side flag disagrees with the terminal segment",
                           strand=si, end=which)
            elif desc.kind == AT_VERTEX:
                if not 0 <= desc.ref < nv:
                    rb.add("DanglingEnd", "end references a missing vertex",
                           strand=si, end=which)
                    continue
                v = f.vertices[desc.ref]
                if v.torus_index != s.torus_index or v.tz != pt:
                    rb.add("DanglingEnd", "end is not at its vertex", strand=si, end=which)
                if (si, which) not in v.ends:
                    rb.add("DanglingEnd", "vertex does not list this end", strand=si,
                           end=which)

    for vi, v in enumerate(f.vertices):
        if not v.ends:
            rb.add("IsolatedVertex", "vertex has no incident strands", vertex=vi)
        if _on_skeleton(d, v.torus_index, v.tz):
            rb.add("CuspOnSkeleton", "graph vertex lies on T", vertex=vi)
        for si, which in v.ends:
            if not 0 <= si < len(f.strands) or f.strands[si].end_desc(which) != End(AT_VERTEX, vi):
                rb.add("DanglingEnd", "vertex lists an end that is not attached",
                       vertex=vi)

    if rb._issues:
        return rb.build()

    partners = end_partners(f)
    for si, s in enumerate(f.strands):
        for which in (START, END):
            if s.end_desc(which).kind == ON_T and (si, which) not in partners:
                rb.add("UnmatchedEnd", "no partner end on the paired T-point",
                       strand=si, end=which)

    _, bad = find_crossings(f)
    for i, k, j, l, why in bad:
        rb.add("BadCrossing", why, strands=(i, j), segments=(k, l))
    return rb.build()


# ---------------------------------------------------------------------------
# abstract graph


@dataclass(frozen=True)
class Chain:
    """Strands joined across matched T-ends: one edge of the abstract graph.

    ``steps`` lists ``(strand, forward)``; ``head``/``tail`` are graph
    vertex ids, or ``None`` for a vertex-free closed chain.
    """

    steps: Tuple[Tuple[int, bool], ...]
    head: Optional[int]
    tail: Optional[int]

    @property
    def closed(self) -> bool:
        return self.head is None


def _other(which):
    return END if which == START else START


def chains(f: GraphFront) -> List[Chain]:
    partners = end_partners(f)
    used = set()
    out = []

    def walk(si, entry):
        steps = []
        while True:
            used.add(si)
            steps.append((si, entry == START))
            exit_ = _other(entry)
            desc = f.strands[si].end_desc(exit_)
            if desc.kind == AT_VERTEX:
                return steps, desc.ref
            if desc.kind == CLOSED:
                return steps, None
            nxt = partners.get((si, exit_))
            if nxt is None:
                raise InvalidDiagram(f"strand {si} has an unmatched end")
            si, entry = nxt
            if si in used:
                return steps, None

    for vi, v in enumerate(f.vertices):
        for si, which in v.ends:
            if si in used:
                continue
            steps, tail = walk(si, which)
            out.append(Chain(tuple(steps), vi, tail))
    for si in range(len(f.strands)):
        if si in used:
            continue
        steps, tail = walk(si, START)
        out.append(Chain(tuple(steps), None, None))
    return out


@dataclass(frozen=True)
class AbstractGraph:
    n_vertices: int
    edges: Tuple[Tuple[int, int], ...]
    loops: int  # vertex-free closed components

    @property
    def euler_char(self) -> int:
        return self.n_vertices - len(self.edges)


def abstract_graph(f: GraphFront) -> AbstractGraph:
    cs = chains(f)
    edges = tuple((c.head, c.tail) for c in cs if not c.closed)
    return AbstractGraph(len(f.vertices), edges, sum(1 for c in cs if c.closed))


def vertex_rotation(f: GraphFront, vid: int) -> List[Tuple[int, str]]:
    """Strand ends at a vertex in counterclockwise order in the contact plane.

    An edge leaving the vertex points along ``(dtheta, dx)`` with
    ``x = -slope``: right-going edges come first by increasing ``x``, then
    left-going edges by decreasing ``x``.  Ties keep the listed order.
    """
    v = f.vertices[vid]
    listed = {e: pos for pos, e in enumerate(v.ends)}

    def key(end):
        si, which = end
        pts = f.strands[si].points
        p, q = (pts[0], pts[1]) if which == START else (pts[-1], pts[-2])
        dt, dz = delta(p, q)
        x = -dz / dt
        return ((0, x) if dt > 0 else (1, -x)) + (listed[end],)
    return sorted(v.ends, key=key)


# ---------------------------------------------------------------------------
# subdivision


def _locate(s: FrontStrand, pt: Point):
    """(segment index, parameter) of ``pt`` on the strand, or None."""
    for k, (p, dd) in enumerate(s.segments()):
        hits = torus_segment_intersections(p, dd, pt, (Fraction(0), Fraction(0)))
        for h in hits:
            if h != "overlap":
                return k, h[0]
    return None


def subdivide_edge(f: GraphFront, strand_id: int, pt) -> GraphFront:
    """Place a new valence-two vertex at ``pt`` on strand ``strand_id``.

    The strand is split in two (a closed strand becomes one strand from the
    new vertex back to itself); the image of the front is unchanged.
    """
    s = f.strands[strand_id]
    pt = point(*pt)
    loc = _locate(s, pt)
    if loc is None:
        raise PointNotOnStrand(f"{pt} is not on strand {strand_id}")
    k, t = loc
    pts = list(s.points)
    if t == 0 and k == 0 and not s.closed:
        raise PointNotOnStrand("cannot subdivide at a strand endpoint")
    if t == 1 and k == len(pts) - 2 and not s.closed:
        raise PointNotOnStrand("cannot subdivide at a strand endpoint")
    if t == 1:
        k, t = k + 1, Fraction(0)
    if t == 0:
        idx = k  # at existing breakpoint idx
        if idx in s.cusps:
            raise PointNotOnStrand("cannot subdivide at a cusp")
        before_pts, after_pts = pts[:idx + 1], pts[idx:]
        before_cusps = {c for c in s.cusps if c < idx}
        after_cusps = {c - idx for c in s.cusps if c > idx}
    else:
        before_pts = pts[:k + 1] + [pt]
        after_pts = [pt] + pts[k + 1:]
        before_cusps = {c for c in s.cusps if c <= k}
        after_cusps = {c - k for c in s.cusps if c > k}

    new_vid = len(f.vertices)
    vend = End(AT_VERTEX, new_vid)
    strands = list(f.strands)
    vertices = list(f.vertices)
    if s.closed:
        # rotate the loop so that it starts and ends at the new vertex
        loop = after_pts + before_pts[1:]
        n_after = len(after_pts) - 1
        cusps = set(after_cusps) | {c + n_after for c in before_cusps}
        if 0 in s.cusps:
            cusps.add(n_after)
        cusps = {c for c in cusps if 0 < c < len(loop) - 1}
        strands[strand_id] = FrontStrand(s.torus_index, loop, cusps, vend, vend)
        vertices.append(FrontVertex(s.torus_index, pt[0], pt[1],
                                    ((strand_id, START), (strand_id, END))))
        return GraphFront(f.diagram, strands, vertices)

    new_sid = len(strands)
    strands[strand_id] = FrontStrand(s.torus_index, before_pts, before_cusps, s.start, vend)
    strands.append(FrontStrand(s.torus_index, after_pts, after_cusps, vend, s.end))
    if s.end.kind == AT_VERTEX:
        v = vertices[s.end.ref]
        ends = tuple((new_sid, END) if e == (strand_id, END) else e for e in v.ends)
        vertices[s.end.ref] = replace(v, ends=ends)
    vertices.append(FrontVertex(s.torus_index, pt[0], pt[1],
                                ((strand_id, END), (new_sid, START))))
    return GraphFront(f.diagram, strands, vertices)


# ---------------------------------------------------------------------------
# random generator

Q = Fraction


def _lens(rng, torus, d):
    t0, z0 = Q(rng.randrange(256), 256), Q(rng.randrange(256), 256)
    w = Q(rng.randint(8, 24), 256)
    s = rng.choice([Q(1, 2), Q(1), Q(2), Q(3, 2)])
    h = w * s / 2
    d1 = h * Q(rng.randint(1, 7), 8)
    d2 = h * Q(rng.randint(1, 7), 8)
    L = (t0, z0)
    M1 = (t0 + w / 2, z0 - h - d1)
    R = (t0 + w, z0 - 2 * h)
    M2 = (t0 + w / 2, z0 - h + d2)
    return [FrontStrand(torus, (L, M1, R, M2, L), {0, 2})], []


def _vertex_loop(rng, torus, d, vid):
    t0, z0 = Q(rng.randrange(256), 256), Q(rng.randrange(256), 256)
    w = Q(rng.randint(8, 24), 256)
    h = w / 2
    d1 = h * Q(rng.randint(1, 7), 8)
    d2 = h * Q(rng.randint(1, 7), 8)
    U = (t0, z0)
    pts = (U, (t0 + w / 2, z0 - h - d1), (t0 + w, z0 - 2 * h), (t0 + w / 2, z0 - h + d2), U)
    ve = End(AT_VERTEX, vid)
    return [FrontStrand(torus, pts, {2}, ve, ve)], [(torus, U, ((0, START), (0, END)))]


def _theta_graph(rng, torus, d, vid):
    t0, z0 = Q(rng.randrange(256), 256), Q(rng.randrange(256), 256)
    w = Q(rng.randint(12, 32), 256)
    s = rng.choice([Q(1, 2), Q(1), Q(2)])
    U, V = (t0, z0), (t0 + w, z0 - w * s)
    bend = w * s * Q(rng.randint(1, 3), 8)
    strands = []
    for k in (1, 0, -1):
        mid = (t0 + w / 2, z0 - w * s / 2 + k * bend)
        strands.append(FrontStrand(torus, (U, mid, V), (), End(AT_VERTEX, vid),
                                   End(AT_VERTEX, vid + 1)))
    # cyclic order: counterclockwise around U from the top branch, around V
    # from the bottom branch
    u_ends = ((0, START), (1, START), (2, START))
    v_ends = ((2, END), (1, END), (0, END))
    return strands, [(torus, U, u_ends), (torus, V, v_ends)]


def _edge_slope_at(e, c):
    c = wrap(c)
    for k, (p, dd) in enumerate(e.segments()):
        if dd[0] == 0:
            continue
        span = abs(dd[0])
        u = wrap(sign(dd[0]) * (c - p[0]))
        if 0 < u < span:
            return dd[1] / dd[0]
    return None


def _through_skeleton(rng, torus_unused, d):
    """A two-cusp knot passing twice through a matched pair of T-points."""
    ei = rng.randrange(len(d.edges))
    e = d.edges[ei]
    crit = set(d.critical_thetas())
    t1 = Q(rng.randrange(1024), 1024)
    if t1 in crit or not e.z_at(t1):
        return None
    se = _edge_slope_at(e, t1)
    if not se:
        return None
    step = Q(rng.randint(2, 6), 1024) * sign(se)
    t2 = wrap(t1 + step)
    if t2 in crit or not e.z_at(t2) or not d.is_generic(t2):
        return None
    z1 = e.z_at(t1)[0]
    z2 = e.z_at(t2)[0]
    try:
        o1 = partner_point(d, ei, t1, z1)
        o2 = partner_point(d, ei, t2, z2)
    except InvalidDiagram:
        return None
    if o1.edge != o2.edge:
        return None
    ep = d.edges[o1.edge]
    # lifted heights near t1
    z2u = z1 + lift(z2 - z1)
    w1, w2u = o1.z, o1.z + lift(o2.z - o1.z)
    T, Tp = e.torus_index, ep.torus_index

    def rnd(lo, hi):
        return Q(rng.randint(lo, hi), 2048)

    l1, l2 = rnd(1, 3), rnd(1, 3)
    t2u = t1 + step
    B1, B2 = (t1 - l1, z1), (t2u - l2, z2u)
    C1 = (min(B1[0], B2[0]) - rnd(8, 40), max(z1, z2u) + rnd(8, 40))
    s1 = FrontStrand(T, ((t2u, z2u), B2, C1, B1, (t1, z1)), {2},
                     End(ON_T, ei, LEFT), End(ON_T, ei, LEFT))
    m1, m2 = rnd(1, 3), rnd(1, 3)
    B1p, B2p = (t1 + m1, w1), (t2u + m2, w2u)
    C2 = (max(B1p[0], B2p[0]) + rnd(8, 40), min(w1, w2u) - rnd(8, 40))
    s2 = FrontStrand(Tp, ((t1, w1), B1p, C2, B2p, (t2u, w2u)), {2},
                     End(ON_T, o1.edge, RIGHT), End(ON_T, o1.edge, RIGHT))
    return [s1, s2], []


def random_graph_front(seed: int, size: int, d: MorseDiagram,
                       max_retries: int = 200) -> GraphFront:
    """Deterministic random valid front with at most ``size`` strands.

    Components are two-cusp loops, vertex loops, theta graphs and, when the
    diagram has a T-graph, knots running through a matched pair of T-points.
    Every accepted component keeps the whole front valid.
    """
    if not validate_morse_diagram(d).ok:
        raise InvalidDiagram("random fronts need a valid Morse diagram")
    rng = random.Random(seed)
    strands: List[FrontStrand] = []
    vertices: List[FrontVertex] = []
    budget = max(int(size), 0)
    failures = 0
    while budget > 0:
        kinds = ["lens"]
        if budget >= 1:
            kinds.append("loop")
        if budget >= 2 and d.edges:
            kinds += ["through", "through"]
        if budget >= 3:
            kinds.append("theta")
        if not strands and budget == 1:
            kinds = ["lens"]
        kind = rng.choice(kinds)
        torus = rng.randrange(d.n)
        base_s, base_v = len(strands), len(vertices)
        if kind == "lens":
            got = _lens(rng, torus, d)
        elif kind == "loop":
            got = _vertex_loop(rng, torus, d, base_v)
        elif kind == "theta":
            got = _theta_graph(rng, torus, d, base_v)
        else:
            got = _through_skeleton(rng, torus, d)
        if got is not None:
            new_s, new_v = got
            cand_v = list(vertices) + [
                FrontVertex(t, p[0], p[1], tuple((base_s + si, w) for si, w in ends))
                for t, p, ends in new_v]
            cand_s = list(strands) + [_shift_strand(s, base_s) for s in new_s]
            cand = GraphFront(d, cand_s, cand_v)
            try:
                ok = validate_front(cand).ok
            except (MalformedGeometry, TangentialCrossing):
                ok = False
            if ok:
                strands, vertices = cand_s, cand_v
                budget -= len(new_s)
                continue
        failures += 1
        if failures > max_retries:
            if strands:
                break
            raise GenerationFailure(
                f"no valid component after {max_retries} attempts (seed={seed})")
    return resolve_crossings(GraphFront(d, strands, vertices))


def _shift_strand(s: FrontStrand, offset: int) -> FrontStrand:
    # vertex refs are already absolute; strand indices live only in vertices
    return s


# ---------------------------------------------------------------------------
# builtin fronts


def _unknot_lens():
    d = builtin_diagram("disk_identity")
    pts = ((Q(1, 4), Q(5, 8)), (Q(1, 2), Q(3, 8)), (Q(3, 4), Q(1, 4)),
           (Q(1, 2), Q(1, 2)), (Q(1, 4), Q(5, 8)))
    return GraphFront(d, [FrontStrand(0, pts, {0, 2})])


def _two_cusp_knot_through_skeleton():
    # a knot on the first example crossing the T-pair at theta 3/16 and 1/4
    d = builtin_diagram("ex_2_1_a")
    s1 = FrontStrand(0, ((Q(1, 4), Q(1, 4)), (Q(7, 32), Q(1, 4)), (Q(1, 32), Q(3, 8)),
                         (Q(5, 32), Q(3, 16)), (Q(3, 16), Q(3, 16))), {2},
                     End(ON_T, 0, LEFT), End(ON_T, 0, LEFT))
    s2 = FrontStrand(1, ((Q(3, 16), Q(11, 16)), (Q(7, 32), Q(11, 16)), (Q(13, 32), Q(9, 16)),
                         (Q(9, 32), Q(3, 4)), (Q(1, 4), Q(3, 4))), {2},
                     End(ON_T, 1, RIGHT), End(ON_T, 1, RIGHT))
    return GraphFront(d, [s1, s2])


def _builtin_theta_graph():
    d = builtin_diagram("disk_identity")
    U, V = (Q(1, 4), Q(3, 4)), (Q(1, 2), Q(1, 4))
    mids = [(Q(3, 8), Q(9, 16)), (Q(3, 8), Q(1, 2)), (Q(3, 8), Q(7, 16))]
    strands = [FrontStrand(0, (U, m, V), (), End(AT_VERTEX, 0), End(AT_VERTEX, 1))
               for m in mids]
    verts = [FrontVertex(0, U[0], U[1], ((0, START), (1, START), (2, START))),
             FrontVertex(0, V[0], V[1], ((2, END), (1, END), (0, END)))]
    return GraphFront(d, strands, verts)


def _slope_one_loop():
    d = builtin_diagram("disk_identity")
    pts = ((Q(0), Q(0)), (Q(1, 3), Q(2, 3)), (Q(2, 3), Q(1, 3)), (Q(0), Q(0)))
    return GraphFront(d, [FrontStrand(0, pts)])


BUILTIN_FRONTS = {
    "unknot_lens": _unknot_lens,
    "knot_through_skeleton": _two_cusp_knot_through_skeleton,
    "theta_graph": _builtin_theta_graph,
    "slope_one_loop": _slope_one_loop,
}


def builtin_front(name: str) -> GraphFront:
    try:
        return resolve_crossings(BUILTIN_FRONTS[name]())
    except KeyError:
        raise UnknownName(f"no builtin front named {name!r}") from None
