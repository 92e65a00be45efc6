"""Bennequin surfaces, ribbons of fronts, and their invariants.

A Bennequin surface is a set of meridional disks of the binding joined by
half-twisted bands, each band lying in one page.  Around a disk the bands
attach in increasing page angle, so the surface is the ribbon graph whose
rotation at each disk is the theta order of its bands.  Every band is
glued orientably: the strip runs from just before its attachment on one
disk to just after its attachment on the other and vice versa.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .arc import END, START, ArcDiagram, validate_arc_diagram
from .exceptions import (CuspOnSkeleton, IndexOutOfRange, InvalidArcDiagram,
                         NotDestabilizable, PreconditionViolation, SelfBand,
                         ThetaCollision)
from .front import GraphFront, chains, validate_front, vertex_rotation
from .geometry import simplest_between, wrap

FROM_BANDS = "from_bands"
FROM_RIBBON = "from_ribbon"
FROM_SATELLITE = "from_satellite"


@dataclass(frozen=True)
class Band:
    theta: Fraction
    i: int
    j: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap(self.theta))
        if self.sign not in (1, -1):
            raise ValueError("band sign must be +1 or -1")


@dataclass(frozen=True)
class BennequinSurface:
    disks: Tuple[Tuple[int, Fraction], ...]
    bands: Tuple[Band, ...] = ()
    provenance: str = FROM_BANDS
    back_arcs: int = 0

    def __post_init__(self):
        object.__setattr__(self, "disks", tuple((int(t), wrap(z)) for t, z in self.disks))
        object.__setattr__(self, "bands", tuple(
            b if isinstance(b, Band) else Band(*b) for b in self.bands))
        d = len(self.disks)
        if d == 0 and self.bands:
            raise IndexOutOfRange("bands need at least one disk")
        seen = set()
        for b in self.bands:
            if not (0 <= b.i < d and 0 <= b.j < d):
                raise IndexOutOfRange(f"band at theta={b.theta} joins missing disks")
            if b.theta in seen:
                raise ThetaCollision(f"two bands share theta={b.theta}")
            seen.add(b.theta)
            if b.i == b.j and self.provenance == FROM_BANDS:
                raise SelfBand(f"band at theta={b.theta} joins disk {b.i} to itself")

    @property
    def d(self) -> int:
        return len(self.disks)

    @property
    def b_plus(self) -> int:
        return sum(1 for b in self.bands if b.sign > 0)

    @property
    def b_minus(self) -> int:
        return sum(1 for b in self.bands if b.sign < 0)


def bennequin_from_bands(d: int, bands: Sequence) -> BennequinSurface:
    """Surface on the disk open book: ``d`` disks stacked on one binding."""
    if d < 1:
        raise IndexOutOfRange("need at least one disk")
    disks = [(0, Fraction(k, d)) for k in range(d)]
    return BennequinSurface(tuple(disks), tuple(Band(*b) if not isinstance(b, Band) else b
                                                for b in bands), FROM_BANDS)


# ---------------------------------------------------------------------------
# cell complex


@dataclass(frozen=True)
class CellComplex:
    """Explicit 2-complex of a disk-and-band surface.

    0-cells are the corner points ``(disk, slot, 'before'|'after')`` (or
    ``(disk, None, 'base')`` on a bare disk); 1-cells are the boundary gaps
    of each disk, the attaching segments and the two free sides of each
    band; 2-cells are disks and bands.
    """

    vertices: Tuple
    edges: Tuple  # (name, endpoint, endpoint, on_boundary)
    faces: Tuple

    @property
    def euler_char(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def boundary_cycles(self) -> List[List]:
        adj: Dict = {v: [] for v in self.vertices}
        for name, a, b, free in self.edges:
            if free:
                adj[a].append((name, b))
                adj[b].append((name, a))
        used = set()
        cycles = []
        for v in self.vertices:
            for name, w in adj[v]:
                if name in used:
                    continue
                cyc = [v]
                used.add(name)
                cur, prev = w, name
                while cur != v:
                    cyc.append(cur)
                    nxt = [(n, x) for n, x in adj[cur] if n not in used]
                    if not nxt:
                        break
                    prev, cur = nxt[0]
                    used.add(prev)
                cycles.append(cyc)
        return cycles


def _slots(s: BennequinSurface):
    """Per disk, the band ends ``(theta, band, end)`` in increasing theta."""
    slots: List[list] = [[] for _ in range(s.d)]
    for bi, b in enumerate(s.bands):
        slots[b.i].append((b.theta, bi, 0))
        slots[b.j].append((b.theta, bi, 1))
    for lst in slots:
        lst.sort()
    return slots


def cell_complex(s: BennequinSurface) -> CellComplex:
    slots = _slots(s)
    where: Dict[Tuple[int, int], Tuple[int, int]] = {}
    verts, edges, faces = [], [], []
    for di, lst in enumerate(slots):
        faces.append(("disk", di))
        if not lst:
            v = (di, None, "base")
            verts.append(v)
            edges.append((("loop", di), v, v, True))
            continue
        for k, (_, bi, end) in enumerate(lst):
            where[(bi, end)] = (di, k)
            before, after = (di, k, "before"), (di, k, "after")
            verts += [before, after]
            edges.append((("attach", di, k), before, after, False))
            nxt = (di, (k + 1) % len(lst), "before")
            edges.append((("gap", di, k), after, nxt, True))
    for bi, b in enumerate(s.bands):
        faces.append(("band", bi))
        di, ki = where[(bi, 0)]
        dj, kj = where[(bi, 1)]
        edges.append((("side", bi, 0), (di, ki, "before"), (dj, kj, "after"), True))
        edges.append((("side", bi, 1), (di, ki, "after"), (dj, kj, "before"), True))
    return CellComplex(tuple(verts), tuple(edges), tuple(faces))


def euler_characteristic(s: BennequinSurface) -> int:
    return s.d - len(s.bands)


def boundary_components(s: BennequinSurface) -> int:
    """Boundary circles counted by walking the free edges of the complex."""
    return len(cell_complex(s).boundary_cycles())


def connected_components(s: BennequinSurface) -> int:
    parent = list(range(s.d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for b in s.bands:
        parent[find(b.i)] = find(b.j)
    return len({find(x) for x in range(s.d)})


def self_linking(s: BennequinSurface) -> int:
    return (s.b_plus - s.b_minus) - s.d


def bennequin_slack(s: BennequinSurface) -> int:
    return -euler_characteristic(s) - self_linking(s)


def is_strongly_quasipositive(s: BennequinSurface) -> bool:
    return s.b_minus == 0


@dataclass(frozen=True)
class InvariantReport:
    euler_char: int
    boundary_components: int
    self_linking: int
    bennequin_slack: int
    is_sqp: bool
    d: int
    b_plus: int
    b_minus: int

    def to_dict(self):
        return dict(self.__dict__)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def invariant_report(s: BennequinSurface) -> InvariantReport:
    return InvariantReport(euler_characteristic(s), boundary_components(s),
                           self_linking(s), bennequin_slack(s),
                           is_strongly_quasipositive(s), s.d, s.b_plus, s.b_minus)


# ---------------------------------------------------------------------------
# stabilization


def _free_theta(s: BennequinSurface) -> Fraction:
    """Simplest angle in the widest cyclic gap between band angles."""
    thetas = sorted(b.theta for b in s.bands)
    if not thetas:
        return Fraction(1, 2)
    best = None
    for a, b in zip(thetas, thetas[1:] + [thetas[0] + 1]):
        if best is None or b - a > best[1] - best[0]:
            best = (a, b)
    return wrap(simplest_between(*best))


def positive_markov_stabilization(s: BennequinSurface) -> BennequinSurface:
    """Add a disk next to the last one and a positive band joining them."""
    if s.d == 0:
        raise PreconditionViolation("cannot stabilize the empty surface")
    torus, z = s.disks[-1]
    zs = sorted(z2 for t2, z2 in s.disks if t2 == torus)
    above = [z2 for z2 in zs if z2 > z]
    new_z = simplest_between(z, above[0] if above else zs[0] + 1)
    band = Band(_free_theta(s), s.d - 1, s.d, 1)
    return replace(s, disks=s.disks + ((torus, wrap(new_z)),), bands=s.bands + (band,))


def destabilize(s: BennequinSurface) -> BennequinSurface:
    """Remove the highest-index disk carrying exactly one positive band."""
    for di in range(s.d - 1, -1, -1):
        inc = [bi for bi, b in enumerate(s.bands) if di in (b.i, b.j)]
        if len(inc) != 1:
            continue
        b = s.bands[inc[0]]
        if b.sign < 0 or b.i == b.j or s.d == 1:
            continue

        def ren(x):
            return x - 1 if x > di else x
        bands = tuple(Band(c.theta, ren(c.i), ren(c.j), c.sign)
                      for k, c in enumerate(s.bands) if k != inc[0])
        disks = s.disks[:di] + s.disks[di + 1:]
        return replace(s, disks=disks, bands=bands)
    raise NotDestabilizable("no disk with exactly one positive band")


# ---------------------------------------------------------------------------
# ribbons


@dataclass(frozen=True)
class RibbonFront:
    """Cells of the ribbon built on a front.

    ``nodes`` are the disk cells: ``("cusp", strand, index)``,
    ``("vertex", id)`` or ``("loop", strand)`` for a closed chain without
    cusps.  ``bands`` are the cusp- and vertex-free pieces, each
    ``(node_a, node_b, half_twists)``.  ``rotation`` gives, per node, the
    cyclic order of band ends ``(band, 0|1)``.
    """

    source: GraphFront
    nodes: Tuple
    bands: Tuple
    rotation: Tuple

    @property
    def euler_char(self) -> int:
        return len(self.nodes) - len(self.bands)

    def face_count(self) -> int:
        """Boundary circles of the orientable ribbon (faces of the rotation)."""
        succ = {}
        for node, ends in zip(self.nodes, self.rotation):
            for k, e in enumerate(ends):
                succ[e] = ends[(k + 1) % len(ends)]
        count, seen = 0, set()
        bare = sum(1 for ends in self.rotation if not ends)
        for start in succ:
            if start in seen:
                continue
            count += 1
            h = start
            while h not in seen:
                seen.add(h)
                h = succ[(h[0], 1 - h[1])]
        return count + bare


def ribbon_front(f: GraphFront) -> RibbonFront:
    rep = validate_front(f)
    if "CuspOnSkeleton" in rep.code_set():
        raise CuspOnSkeleton("ribbon disks need cusps and vertices off T")
    if not rep.ok:
        raise PreconditionViolation("front is invalid: " + ", ".join(rep.codes()))
    nodes: List = [("vertex", vi) for vi in range(len(f.vertices))]
    node_id = {n: k for k, n in enumerate(nodes)}
    bands: List = []
    ends_at: Dict[int, list] = {k: [] for k in range(len(nodes))}

    for c in chains(f):
        # walk the chain as a sequence of (strand, point index) node hits
        hits = []
        for si, forward in c.steps:
            s = f.strands[si]
            m = len(s.points) - 1
            order = range(1, m) if not s.closed else range(0, m)
            idxs = [i for i in order if i in s.cusps]
            if not forward:
                idxs.reverse()
            hits += [("cusp", si, i) for i in idxs]
        seq = []
        if c.head is not None:
            seq.append(("vertex", c.head, c.steps[0]))
        seq += [(h, None, None) for h in hits]
        if c.tail is not None:
            seq.append(("vertex", c.tail, c.steps[-1]))
        if c.closed and not hits:
            seq = [(("loop", c.steps[0][0]), None, None)]
        keys = []
        for item in seq:
            if item[0] == "vertex":
                keys.append(("vertex", item[1]))
            else:
                keys.append(item[0])
        for k in keys:
            if k not in node_id:
                node_id[k] = len(nodes)
                nodes.append(k)
                ends_at[node_id[k]] = []
        pairs = list(zip(keys, keys[1:]))
        if c.closed:
            pairs.append((keys[-1], keys[0]))
        for pi, (a, b) in enumerate(pairs):
            bi = len(bands)
            bands.append((node_id[a], node_id[b], 1))
            ends_at[node_id[a]].append((bi, 0, "out", c, pi))
            ends_at[node_id[b]].append((bi, 1, "in", c, pi))

    # rotation at a graph vertex: counterclockwise order of the edge
    # directions in the contact plane, read as (theta-direction, x = -slope)
    rotation = []
    for k, n in enumerate(nodes):
        ends = ends_at[k]
        if n[0] == "vertex":
            order = {e: pos for pos, e in enumerate(vertex_rotation(f, n[1]))}
            ends = sorted(ends, key=lambda e: (order[_strand_end(e)], e[0], e[1]))
        rotation.append(tuple((e[0], e[1]) for e in ends))
    return RibbonFront(f, tuple(nodes), tuple(bands), tuple(rotation))


def _strand_end(e):
    bi, side, io, c, pi = e
    if io == "out":
        si, fwd = c.steps[0]
        return (si, "start" if fwd else "end")
    si, fwd = c.steps[-1]
    return (si, "end" if fwd else "start")


def ribbon_to_bennequin(a: ArcDiagram) -> BennequinSurface:
    """One disk per binding vertex and one positive band per wire."""
    rep = validate_arc_diagram(a)
    if not rep.ok:
        raise InvalidArcDiagram("arc diagram is invalid: " + ", ".join(rep.codes()))
    verts = a.binding_vertices()
    idx = {v: k for k, v in enumerate(verts)}
    bands = []
    back = 0
    for w in a.wires:
        i, j = idx[w.end(START)], idx[w.end(END)]
        bands.append(Band(w.theta, i, j, 1))
        if sum(arc.length for arc in w.arcs) > 0:
            back += 1
    return BennequinSurface(tuple(verts), tuple(bands), FROM_RIBBON, back)
