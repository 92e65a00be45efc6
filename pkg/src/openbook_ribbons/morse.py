"""Abstract Morse diagrams of open books.

A diagram is ``n`` tori with coordinates ``(theta, z)``, decorated by a
labelled trivalent graph (the *T-graph*).  Each T-edge is a polyline that
must be monotone in ``theta``, the page angle; the slice ``theta = c`` of all
tori is the boundary of the page at angle ``c``, and pairing the T-points on
that slice by label records where the one-handles of the page attach.

Four axioms are checked:

(i)   edges are monotone in theta;
(ii)  every label meets a generic slice exactly twice, and the number of
      pairs is the same for all generic slices;
(iii) orientable surgery on the slice circles along the pairs gives one
      circle;
(iv)  trivalent vertices come in partner pairs on a common slice, one where
      an x-curve merges into a y-curve from one side and one where an
      x-curve leaves the other y-curve on the opposite side.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exceptions import InvalidDiagram, MalformedGeometry, NonGenericSlice, UnknownName
from .geometry import (Point, delta, generic_samples, point, sign,
                       torus_segment_intersections, wrap)
from .report import ReportBuilder, ValidationReport

LEFT, RIGHT = "L", "R"


@dataclass(frozen=True)
class TorusPoint:
    torus_index: int
    theta: Fraction
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap(self.theta))
        object.__setattr__(self, "z", wrap(self.z))

    @property
    def tz(self) -> Point:
        return (self.theta, self.z)


@dataclass(frozen=True)
class TEdge:
    """One edge of the T-graph: a polyline on a single torus.

    A polyline whose last point repeats the first is a closed curve; the
    endpoints of an open edge must sit on trivalent vertices.
    """

    torus_index: int
    label: str
    points: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points",
                           tuple(point(t, z) for t, z in self.points))

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and self.points[0] == self.points[-1]

    def segments(self):
        return [(p, delta(p, q)) for p, q in zip(self.points, self.points[1:])]

    def z_at(self, c) -> List[Fraction]:
        """Heights where this edge meets the slice ``theta = c``.

        Segments are read half-open from their start, so a breakpoint is
        counted once.  Open edges never report their vertex endpoints.
        """
        c = wrap(c)
        out = []
        segs = self.segments()
        for k, (p, d) in enumerate(segs):
            if d[0] == 0:
                continue
            span = abs(d[0])
            u = wrap(sign(d[0]) * (c - p[0]))
            if not u < span:
                continue
            if u == 0 and k == 0 and not self.closed:
                continue
            out.append(wrap(p[1] + d[1] * u / span))
        return out


@dataclass(frozen=True)
class MorseVertex:
    """A trivalent vertex record.

    ``side`` says from which side the x-curve sits relative to the y-curve
    on the two-edge side of the vertex: ``L`` for smaller z, ``R`` for larger.
    """

    theta: Fraction
    partner: int
    x_label: str
    y_label: str
    side: str
    torus_index: int
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap(self.theta))
        object.__setattr__(self, "z", wrap(self.z))

    @property
    def tz(self) -> Point:
        return (self.theta, self.z)


@dataclass(frozen=True)
class MorseDiagram:
    n: int
    edges: Tuple[TEdge, ...] = ()
    vertices: Tuple[MorseVertex, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def vertex_thetas(self):
        return sorted(set(v.theta for v in self.vertices))

    def critical_thetas(self):
        crit = set(self.vertex_thetas())
        for e in self.edges:
            crit.update(p[0] for p in e.points)
        return sorted(crit)

    def generic_slices(self):
        return generic_samples(self.critical_thetas())

    def is_generic(self, c) -> bool:
        return wrap(c) not in set(self.vertex_thetas())

    def labels(self):
        return sorted(set(e.label for e in self.edges))


@dataclass(frozen=True, order=True)
class SlicePoint:
    torus_index: int
    z: Fraction
    label: str
    edge: int


@dataclass(frozen=True)
class SlicePair:
    label: str
    first: SlicePoint
    second: SlicePoint


@dataclass(frozen=True)
class PageInvariants:
    n_binding: int
    h_handles: int
    euler_char: int
    genus: int

    def as_tuple(self):
        return (self.n_binding, self.h_handles, self.euler_char, self.genus)


# ---------------------------------------------------------------------------
# slices and surgery


def slice_points(d: MorseDiagram, c) -> List[SlicePoint]:
    c = wrap(c)
    if not d.is_generic(c):
        raise NonGenericSlice(f"theta={c} is a vertex slice")
    pts = []
    for idx, e in enumerate(d.edges):
        for z in e.z_at(c):
            pts.append(SlicePoint(e.torus_index, z, e.label, idx))
    return sorted(pts)


def _group_by_label(points):
    groups: Dict[str, List[SlicePoint]] = {}
    for p in points:
        groups.setdefault(p.label, []).append(p)
    return groups


def slice_pairs(d: MorseDiagram, c) -> List[SlicePair]:
    """Labelled pairs of T-points on the slice ``theta = c``.

    Raises :class:`InvalidDiagram` if some label does not occur exactly
    twice (the pairing is then undefined).
    """
    groups = _group_by_label(slice_points(d, c))
    pairs = []
    for label in sorted(groups):
        pts = groups[label]
        if len(pts) != 2:
            raise InvalidDiagram(
                f"label {label!r} meets slice {wrap(c)} {len(pts)} times")
        pairs.append(SlicePair(label, pts[0], pts[1]))
    return pairs


def partner_point(d: MorseDiagram, edge_index: int, c, z) -> SlicePoint:
    """The T-point paired with ``(edge_index, z)`` on slice ``c``."""
    z = wrap(z)
    for pr in slice_pairs(d, c):
        for a, b in ((pr.first, pr.second), (pr.second, pr.first)):
            if a.edge == edge_index and a.z == z:
                return b
    raise InvalidDiagram(f"edge {edge_index} has no T-point at z={z} on slice {c}")


def surgery_circle_count(n: int, pairs: Sequence[Tuple[SlicePoint, SlicePoint]]) -> int:
    """Number of circles after orientable surgery on ``n`` slice circles.

    Every marked point ``p`` is split into ends ``p-`` (below) and ``p+``
    (above).  Circle arcs join ``p+`` to the ``-`` end of the next point up;
    an orientable one-handle on ``{p, q}`` joins ``p-`` to ``q+`` and
    ``p+`` to ``q-``.
    """
    parent: Dict = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    by_torus: Dict[int, List] = {i: [] for i in range(n)}
    for p, q in pairs:
        by_torus[p.torus_index].append(p)
        by_torus[q.torus_index].append(q)
    empty = 0
    for i in range(n):
        pts = sorted(by_torus[i], key=lambda s: s.z)
        if not pts:
            empty += 1
            continue
        for a, b in zip(pts, pts[1:] + pts[:1]):
            union((a, "+"), (b, "-"))
    for p, q in pairs:
        union((p, "-"), (q, "+"))
        union((p, "+"), (q, "-"))
    roots = set(find(a) for a in list(parent))
    return len(roots) + empty


def reconstruct_page_boundary(d: MorseDiagram, c) -> int:
    pairs = slice_pairs(d, c)
    return surgery_circle_count(d.n, [(p.first, p.second) for p in pairs])


# ---------------------------------------------------------------------------
# validation


def _check_structure(d: MorseDiagram):
    if d.n < 1:
        raise MalformedGeometry("a Morse diagram needs at least one torus")
    for idx, e in enumerate(d.edges):
        if not 0 <= e.torus_index < d.n:
            raise MalformedGeometry(f"edge {idx}: torus {e.torus_index} out of range")
        if len(e.points) < 2:
            raise MalformedGeometry(f"edge {idx}: fewer than two points")
        if e.points[0] == e.points[-1] and len(e.points) < 4:
            raise MalformedGeometry(f"edge {idx}: closed curve needs three distinct points")
        for k, (p, dd) in enumerate(e.segments()):
            if dd == (0, 0):
                raise MalformedGeometry(f"edge {idx}: zero-length segment {k}")
    for vi, v in enumerate(d.vertices):
        if not 0 <= v.torus_index < d.n:
            raise MalformedGeometry(f"vertex {vi}: torus {v.torus_index} out of range")
        if v.side not in (LEFT, RIGHT):
            raise MalformedGeometry(f"vertex {vi}: side must be L or R")
    vpos = {(v.torus_index, v.tz) for v in d.vertices}
    for idx, e in enumerate(d.edges):
        if e.closed:
            continue
        for end in (e.points[0], e.points[-1]):
            if (e.torus_index, end) not in vpos:
                raise MalformedGeometry(
                    f"edge {idx}: endpoint {end} is not a trivalent vertex")
    _check_embedded(d, vpos)


def _check_embedded(d: MorseDiagram, vpos):
    segs = []
    for idx, e in enumerate(d.edges):
        for k, (p, dd) in enumerate(e.segments()):
            segs.append((e.torus_index, idx, k, p, dd, len(e.points) - 1))
    for a in range(len(segs)):
        ta, ea, ka, pa, da, na = segs[a]
        for b in range(a + 1, len(segs)):
            tb, eb, kb, pb, db, nb = segs[b]
            if ta != tb:
                continue
            for hit in torus_segment_intersections(pa, da, pb, db):
                if hit == "overlap":
                    raise MalformedGeometry(f"edges {ea} and {eb} overlap")
                s, u = hit
                if s not in (0, 1) or u not in (0, 1):
                    raise MalformedGeometry(
                        f"edges {ea} and {eb} cross (segments {ka}, {kb})")
                pt = (wrap(pa[0] + s * da[0]), wrap(pa[1] + s * da[1]))
                if ea == eb:
                    adjacent = abs(ka - kb) == 1 or (
                        d.edges[ea].closed and {ka, kb} == {0, na - 1})
                    if adjacent:
                        continue
                    raise MalformedGeometry(f"edge {ea} self-intersects")
                if (ta, pt) in vpos:
                    continue
                raise MalformedGeometry(f"edges {ea} and {eb} touch at {pt}")


@dataclass(frozen=True)
class _VertexEnd:
    edge: int
    label: str
    after: bool  # True if the edge leaves toward larger theta
    rate: Fraction  # z offset per unit theta moving away from the vertex


def vertex_ends(d: MorseDiagram, vi: int) -> List[_VertexEnd]:
    v = d.vertices[vi]
    ends = []
    for idx, e in enumerate(d.edges):
        if e.torus_index != v.torus_index or e.closed:
            continue
        pts = e.points
        for at, nb in ((0, 1), (len(pts) - 1, len(pts) - 2)):
            if pts[at] != v.tz:
                continue
            dd = delta(pts[at], pts[nb])
            if dd[0] == 0:
                continue
            ends.append(_VertexEnd(idx, e.label, dd[0] > 0, dd[1] / abs(dd[0])))
    return ends


def _classify_vertex(d, vi):
    """Return (kind, x, y, side) from local geometry, or an error string."""
    ends = vertex_ends(d, vi)
    if len(ends) != 3:
        return f"has valence {len(ends)}"
    before = [e for e in ends if not e.after]
    after = [e for e in ends if e.after]
    if len(before) == 2 and len(after) == 1:
        kind, two, one = "merge", before, after[0]
    elif len(before) == 1 and len(after) == 2:
        kind, two, one = "split", after, before[0]
    else:
        return "all three edges approach from one side"
    y = one.label
    ys = [e for e in two if e.label == y]
    xs = [e for e in two if e.label != y]
    if len(ys) != 1 or len(xs) != 1:
        return "labels do not form an (x, y, y) pattern"
    x_end, y_end = xs[0], ys[0]
    if x_end.rate == y_end.rate:
        return "x- and y-curves are tangent at the vertex"
    side = LEFT if x_end.rate < y_end.rate else RIGHT
    return kind, x_end.label, y, side


def validate_morse_diagram(d: MorseDiagram) -> ValidationReport:
    """Check the four axioms of an abstract Morse diagram.

    Structural problems (self-intersections, dangling edges, degenerate
    segments) raise :class:`MalformedGeometry` instead of being reported.
    """
    _check_structure(d)
    rb = ReportBuilder(d.name or "morse")

    for idx, e in enumerate(d.edges):
        signs = set()
        for k, (p, dd) in enumerate(e.segments()):
            if dd[0] == 0:
                rb.add("axiom-i", "segment is vertical (not monotone in theta)",
                       edge=idx, segment=k)
            signs.add(sign(dd[0]))
        signs.discard(0)
        if len(signs) > 1:
            rb.add("axiom-i", "theta direction reverses along the edge", edge=idx)

    counts = set()
    for c in d.generic_slices():
        groups = _group_by_label(slice_points(d, c))
        bad = {lab: len(p) for lab, p in groups.items() if len(p) != 2}
        if bad:
            for lab in sorted(bad):
                rb.add("axiom-ii", f"label {lab!r} meets the slice {bad[lab]} times",
                       slice=c, label=lab)
            continue
        counts.add(len(groups))
        pairs = [(g[0], g[1]) for g in groups.values()]
        circles = surgery_circle_count(d.n, pairs)
        if circles != 1:
            rb.add("axiom-iii", f"surgery yields {circles} circles", slice=c)
    if len(counts) > 1:
        rb.add("axiom-ii", f"pair count varies between slices: {sorted(counts)}")

    for vi, v in enumerate(d.vertices):
        got = _classify_vertex(d, vi)
        if isinstance(got, str):
            rb.add("axiom-iv", f"vertex {got}", vertex=vi)
            continue
        kind, x, y, side = got
        if (x, y) != (v.x_label, v.y_label):
            rb.add("axiom-iv", f"record labels {(v.x_label, v.y_label)} disagree "
                   f"with geometry {(x, y)}", vertex=vi)
        if side != v.side:
            rb.add("axiom-iv", f"side flag {v.side} disagrees with geometry {side}",
                   vertex=vi)
        p = v.partner
        if not 0 <= p < len(d.vertices) or p == vi:
            rb.add("axiom-iv", "vertex has no valid partner", vertex=vi)
            continue
        w = d.vertices[p]
        if w.partner != vi:
            rb.add("axiom-iv", "partner relation is not symmetric", vertex=vi)
        if w.theta != v.theta:
            rb.add("axiom-iv", "partner lies on a different slice", vertex=vi)
        if (w.x_label, w.y_label) != (v.x_label, v.y_label):
            rb.add("axiom-iv", "partner merges a different label pair", vertex=vi)
        if w.side == v.side:
            rb.add("axiom-iv", "partner approaches from the same side", vertex=vi)
        other = _classify_vertex(d, p)
        if not isinstance(other, str) and other[0] == kind:
            rb.add("axiom-iv", f"both partners are {kind} vertices", vertex=vi)
    return rb.build()


def page_invariants(d: MorseDiagram) -> PageInvariants:
    report = validate_morse_diagram(d)
    if not report.ok:
        raise InvalidDiagram(f"{d.name or 'diagram'} is not a Morse diagram: "
                             f"{report.codes()}")
    h = len(slice_pairs(d, d.generic_slices()[0]))
    chi = 1 - h
    twice_g = 1 + h - d.n
    if twice_g < 0 or twice_g % 2:
        raise InvalidDiagram(f"n={d.n}, h={h} do not give an integer genus")
    return PageInvariants(d.n, h, chi, twice_g // 2)


# ---------------------------------------------------------------------------
# built-in diagrams

F = Fraction


def _disk_identity():
    return MorseDiagram(1, (), (), name="disk_identity")


def _ex_2_1_a():
    # annulus page; each binding torus carries a closed T-curve winding once
    # in z per turn of theta (one right-handed twist on each side)
    t0 = TEdge(0, "a", ((0, 0), (F(1, 3), F(1, 3)), (F(2, 3), F(2, 3)), (0, 0)))
    t1 = TEdge(1, "a", ((0, F(1, 2)), (F(1, 3), F(5, 6)), (F(2, 3), F(1, 6)),
                        (0, F(1, 2))))
    return MorseDiagram(2, (t0, t1), (), name="ex_2_1_a")


def _ex_2_1_b():
    # once-punctured torus page: two interleaved handles a, b on one binding
    # torus, with two handle slides of a over b at theta = 1/4 and 3/4
    q, h, tq = F(1, 4), F(1, 2), F(3, 4)
    dz = F(1, 32)
    y1, y2 = F(3, 8), F(7, 8)
    edges = (
        TEdge(0, "a", ((q, y2), (h, F(1, 8)), (tq, y1))),
        TEdge(0, "a", ((tq, y2), (0, F(1, 8)), (q, y1))),
        TEdge(0, "a", ((0, F(5, 8)), (q, F(5, 8) + dz), (h, F(5, 8)),
                       (tq, F(5, 8) - dz), (0, F(5, 8)))),
        TEdge(0, "b", ((q, y1), (h, y1 + dz), (tq, y1))),
        TEdge(0, "b", ((tq, y1), (0, y1 - dz), (q, y1))),
        TEdge(0, "b", ((q, y2), (h, y2 + dz), (tq, y2))),
        TEdge(0, "b", ((tq, y2), (0, y2 - dz), (q, y2))),
    )
    verts = (
        MorseVertex(q, 1, "a", "b", LEFT, 0, y1),
        MorseVertex(q, 0, "a", "b", RIGHT, 0, y2),
        MorseVertex(tq, 3, "a", "b", LEFT, 0, y1),
        MorseVertex(tq, 2, "a", "b", RIGHT, 0, y2),
    )
    return MorseDiagram(1, edges, verts, name="ex_2_1_b")


def _ex_2_1_c():
    # annulus page, a single left-handed twist: the curve on torus 0 winds
    # once downward; the curve on torus 1 has zero net winding
    t0 = TEdge(0, "a", ((0, 0), (F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)), (0, 0)))
    dz = F(1, 32)
    t1 = TEdge(1, "a", ((0, F(1, 2)), (F(1, 4), F(1, 2) + dz), (F(1, 2), F(1, 2)),
                        (F(3, 4), F(1, 2) - dz), (0, F(1, 2))))
    return MorseDiagram(2, (t0, t1), (), name="ex_2_1_c")


BUILTIN_DIAGRAMS = {
    "disk_identity": _disk_identity,
    "ex_2_1_a": _ex_2_1_a,
    "ex_2_1_b": _ex_2_1_b,
    "ex_2_1_c": _ex_2_1_c,
}


def builtin_diagram(name: str) -> MorseDiagram:
    try:
        return BUILTIN_DIAGRAMS[name]()
    except KeyError:
        raise UnknownName(f"no built-in diagram named {name!r}; "
                          f"choose from {sorted(BUILTIN_DIAGRAMS)}") from None
