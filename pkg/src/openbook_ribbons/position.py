"""Placing a front in arc position.

The construction runs in three stages.

1. Anchors.  Every breakpoint, cusp and graph vertex of the front is an
   anchor; anchors become binding vertices at their own height.  An anchor
   next to a horizontal segment ending on T is shifted vertically by the
   drop of the staircase that replaces that segment.
2. Rectangular approximation.  Each non-terminal segment is replaced by a
   staircase shallow / steep / shallow with slopes ``-eps`` and
   ``-1/eps``; a terminal segment becomes shallow then steep, so that it
   reaches T steeply.  Collinear shallow pieces on both sides of an anchor
   merge into one edge, which is contracted onto the binding vertex.
3. Wires.  Every steep piece becomes a one-arc wire at a page angle inside
   the theta range of that piece; every matched pair of T-ends becomes a
   two-arc wire through the T-pair.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .arc import Arc, ArcDiagram, Wire, on_skeleton, validate_arc_diagram
from .exceptions import EpsilonTooLarge, InvalidDiagram, PreconditionViolation
from .front import (AT_VERTEX, END, ON_T, START, GraphFront, abstract_graph,
                    chains, end_partners, validate_front, vertex_rotation)
from .geometry import cross, delta, lift, sign, simplest_between, wrap
from .morse import partner_point

Q = Fraction


@dataclass
class _Anchor:
    key: tuple
    torus: int
    theta: Fraction
    z: Fraction
    kind: str  # vertex | cusp | breakpoint
    shift: Fraction = Fraction(0)
    binding_z: Optional[Fraction] = None

    @property
    def shifted(self) -> Fraction:
        return wrap(self.z + self.shift)


def _anchor_key(f: GraphFront, si: int, j: int):
    s = f.strands[si]
    m = len(s.points) - 1
    if j == 0 and s.start.kind == AT_VERTEX:
        return ("V", s.start.ref)
    if j == m and s.end.kind == AT_VERTEX:
        return ("V", s.end.ref)
    if j == 0 and s.start.kind == ON_T or j == m and s.end.kind == ON_T:
        return None
    if s.closed:
        j %= m
    return ("P", si, j)


@dataclass
class _Plan:
    eps: Fraction
    anchors: Dict[tuple, _Anchor]
    normal: list = field(default_factory=list)    # (si, k, key_a, key_b, lo, hi)
    terminal: Dict[Tuple[int, str], tuple] = field(default_factory=dict)
    paths: list = field(default_factory=list)


def _collect_anchors(f: GraphFront) -> Dict[tuple, _Anchor]:
    out: Dict[tuple, _Anchor] = {}
    for si, s in enumerate(f.strands):
        m = len(s.points) - 1
        for j in range(m + 1):
            key = _anchor_key(f, si, j)
            if key is None or key in out:
                continue
            t, z = s.points[j]
            if key[0] == "V":
                kind = "vertex"
            elif (j % m if s.closed else j) in s.cusps:
                kind = "cusp"
            else:
                kind = "breakpoint"
            out[key] = _Anchor(key, s.torus_index, t, z, kind)
    return out


def _staircase(dt, dz, eps, where):
    """Shallow/steep/shallow split of a segment; returns (a, b)."""
    if dt == 0:
        raise EpsilonTooLarge(eps, Fraction(0), f"vertical segment {where}")
    s = dz / dt
    if s >= 0:
        raise EpsilonTooLarge(eps, Fraction(0), f"non-negative slope after shift {where}")
    feature = min(-s, 1 / -s)
    if not eps < feature:
        raise EpsilonTooLarge(eps, feature, f"slope {s} at {where}")
    b = dt * (s + eps) / (eps - 1 / eps)
    return dt - b, b


def _plan(f: GraphFront, eps: Fraction) -> _Plan:
    anchors = _collect_anchors(f)
    plan = _Plan(eps, anchors)
    # terminal segments first: they fix the anchor shifts
    for si, s in enumerate(f.strands):
        m = len(s.points) - 1
        for which in (START, END):
            if s.end_desc(which).kind != ON_T:
                continue
            e_idx, b_idx = (0, 1) if which == START else (m, m - 1)
            E, B = s.points[e_idx], s.points[b_idx]
            dt = delta(B, E)[0]
            tau = eps * eps * dt
            drop = eps * abs(dt) * (2 - eps * eps)
            key = _anchor_key(f, si, b_idx)
            anchors[key].shift = sign(dt) * drop
            plan.terminal[(si, which)] = (key, E, dt, tau, s.end_desc(which).ref)
    for si, s in enumerate(f.strands):
        m = len(s.points) - 1
        pieces = []
        for k in range(m):
            if s.terminal(k):
                which = START if k == 0 and s.start.kind == ON_T else END
                key, E, dt, tau, _ = plan.terminal[(si, which)]
                sh = anchors[key].shift
                part = [((dt - tau), -eps * (dt - tau), "shallow"),
                        (tau, -tau / eps, "steep")]
                if which == START:
                    part = [(-a, -b, c) for a, b, c in reversed(part)]
                start_pt = E if which == START else (s.points[k][0], s.points[k][1] + sh)
                pieces.append((start_pt, part))
                continue
            ka, kb = _anchor_key(f, si, k), _anchor_key(f, si, k + 1)
            A, B = s.points[k], s.points[k + 1]
            dt, dz = delta(A, B)
            dz += anchors[kb].shift - anchors[ka].shift
            a, b = _staircase(dt, dz, eps, f"strand {si} segment {k}")
            lo = A[0] + a / 2
            plan.normal.append((si, k, ka, kb, min(lo, lo + b), max(lo, lo + b)))
            part = [(a / 2, -eps * a / 2, "shallow"), (b, -b / eps, "steep"),
                    (a / 2, -eps * a / 2, "shallow")]
            pieces.append(((A[0], A[1] + anchors[ka].shift), part))
        plan.paths.append((si, s.torus_index, s.closed, pieces))
    return plan


# ---------------------------------------------------------------------------
# rectangular graph


@dataclass(frozen=True)
class RectPath:
    strand: int
    torus_index: int
    points: Tuple[Tuple[Fraction, Fraction], ...]  # lifted, first is canonical
    kinds: Tuple[str, ...]
    closed: bool


@dataclass(frozen=True)
class RectangularGraph:
    epsilon: Fraction
    paths: Tuple[RectPath, ...]
    cusps: Tuple[Tuple[int, Fraction, Fraction], ...]
    vertices: Tuple[Tuple[int, Fraction, Fraction], ...]

    def kind_counts(self) -> Dict[str, int]:
        out = {"shallow": 0, "steep": 0}
        for p in self.paths:
            for k in p.kinds:
                out[k] += 1
        return out

    def slopes(self):
        return {(b[1] - a[1]) / (b[0] - a[0])
                for p in self.paths for a, b in zip(p.points, p.points[1:])}


def _merge(vectors, closed):
    """Merge consecutive collinear same-kind pieces (cyclically if closed)."""
    out = []
    for v in vectors:
        if out and out[-1][2] == v[2] and cross(out[-1][:2], v[:2]) == 0 \
                and out[-1][0] * v[0] > 0:
            w = out.pop()
            out.append((w[0] + v[0], w[1] + v[1], v[2]))
        else:
            out.append(v)
    back = None
    if closed and len(out) > 1:
        a, b = out[-1], out[0]
        if a[2] == b[2] and cross(a[:2], b[:2]) == 0 and a[0] * b[0] > 0:
            out[0] = (a[0] + b[0], a[1] + b[1], a[2])
            out.pop()
            back = a
    return out, back


def _rect_from_plan(f: GraphFront, plan: _Plan) -> RectangularGraph:
    paths = []
    for si, torus, closed, pieces in plan.paths:
        if not pieces:
            continue
        start = pieces[0][0]
        vecs = [v for _, part in pieces for v in part]
        merged, back = _merge(vecs, closed)
        if back is not None:
            start = (start[0] - back[0], start[1] - back[1])
        pts = [(wrap(start[0]), wrap(start[1]))]
        for dt, dz, _ in merged:
            pts.append((pts[-1][0] + dt, pts[-1][1] + dz))
        paths.append(RectPath(si, torus, tuple(pts), tuple(k for _, _, k in merged), closed))
    cusps = tuple(sorted((a.torus, a.theta, a.shifted) for a in plan.anchors.values()
                         if a.kind == "cusp"))
    verts = tuple(sorted((a.torus, a.theta, a.shifted) for a in plan.anchors.values()
                         if a.kind == "vertex"))
    return RectangularGraph(plan.eps, tuple(paths), cusps, verts)


def slanted_rectangular_approximation(f: GraphFront, epsilon) -> RectangularGraph:
    """Approximate the front by a PL graph with slopes ``-eps`` and ``-1/eps``."""
    _require_valid(f)
    return _rect_from_plan(f, _plan(f, Fraction(epsilon)))


# ---------------------------------------------------------------------------
# arc position


@dataclass(frozen=True)
class AnchorRecord:
    kind: str
    strand: int
    index: int
    vertex: int
    torus_index: int
    theta: Fraction
    z: Fraction
    binding_z: Fraction


@dataclass(frozen=True)
class SubdivisionRecord:
    """Audit trail of the positioning run.

    ``anchors`` lists the binding vertices in binding-vertex order;
    ``chains`` gives, per abstract-graph edge or loop, the sequence of
    binding vertices it passes through.
    """

    epsilon: Fraction
    anchors: Tuple[AnchorRecord, ...]
    chains: Tuple[Tuple[int, ...], ...]
    vertex_map: Tuple[Tuple[int, int], ...]

    @property
    def subdivisions(self) -> int:
        return sum(1 for a in self.anchors if a.kind != "vertex")

    def to_dict(self):
        return {
            "epsilon": str(self.epsilon),
            "anchors": [{"kind": a.kind, "strand": a.strand, "index": a.index,
                         "vertex": a.vertex, "torus": a.torus_index,
                         "theta": str(a.theta), "z": str(a.z),
                         "binding_z": str(a.binding_z)} for a in self.anchors],
            "chains": [list(c) for c in self.chains],
            "vertex_map": [list(p) for p in self.vertex_map],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _require_valid(f: GraphFront):
    rep = validate_front(f)
    if not rep.ok:
        raise PreconditionViolation("front is invalid: " + ", ".join(rep.codes()))


def pick_theta(lo, hi, ok, tries: int = 256):
    """Deterministic search for an admissible angle strictly inside (lo, hi)."""
    queue = [(Fraction(lo), Fraction(hi))]
    for _ in range(tries):
        if not queue:
            break
        a, b = queue.pop(0)
        if not a < b:
            continue
        x = simplest_between(a, b)
        if ok(wrap(x)):
            return wrap(x)
        queue.append((a, x))
        queue.append((x, b))
    return None


def _perturb_binding(plan: _Plan, extra_z):
    """Give distinct anchors distinct binding heights on each torus."""
    by_torus: Dict[int, list] = {}
    for key in sorted(plan.anchors):
        a = plan.anchors[key]
        by_torus.setdefault(a.torus, []).append(a)
    for torus, group in by_torus.items():
        values = sorted({a.shifted for a in group} | set(extra_z.get(torus, ())))
        gaps = [b - a for a, b in zip(values, values[1:])]
        if len(values) > 1:
            gaps.append(values[0] + 1 - values[-1])
        g = min(gaps + [Fraction(1, 4096)]) / 2
        seen: Dict[Fraction, int] = {}
        for a in group:
            z = a.shifted
            k = seen.get(z, 0)
            seen[z] = k + 1
            if k == 0:
                a.binding_z = z
            else:
                a.binding_z = wrap(simplest_between(z + g * (k - 1) / (k + 1) + g / 1024,
                                                    z + g * k / (k + 1)))


def _build_wires(f: GraphFront, plan: _Plan) -> List[Wire]:
    d = f.diagram
    eps = plan.eps
    used = set()
    partners = end_partners(f)
    hops = []
    extra_z: Dict[int, list] = {}
    for (si, which), (key, E, dt, tau, ei) in sorted(plan.terminal.items()):
        other = partners[(si, which)]
        if (si, which) > other:
            continue
        okey, oE, odt, _, oei = plan.terminal[other]
        hops.append(((si, which), key, E, ei, other, okey, oE, oei))
        extra_z.setdefault(f.strands[si].torus_index, []).append(E[1])
        extra_z.setdefault(f.strands[other[0]].torus_index, []).append(oE[1])
    _perturb_binding(plan, extra_z)
    anchors = plan.anchors
    wires: List[Wire] = []

    def ends_ok(theta, pts):
        return (d.is_generic(theta) and theta not in used
                and not any(on_skeleton(d, t, theta, z) for t, z in pts))

    for (si, which), key, E, ei, other, okey, oE, oei in hops:
        T = f.strands[si].torus_index
        To = f.strands[other[0]].torus_index
        zb, zob = anchors[key].binding_z, anchors[okey].binding_z
        t = E[0]
        first_in = which == END  # the strand arrives at E along its own order
        wire = None
        if ends_ok(t, [(T, zb), (To, zob)]):
            wire = _hop_wire(t, T, zb, E[1], To, oE[1], zob, first_in)
        else:
            radius = min(abs(plan.terminal[(si, which)][2]),
                         abs(plan.terminal[other][2])) / 2
            crit = [c for c in d.critical_thetas()]
            for c in crit:
                gap = abs(lift(c - t))
                if gap:
                    radius = min(radius, gap / 2)

            def ok(theta):
                if not ends_ok(theta, [(T, zb), (To, zob)]):
                    return False
                zs = d.edges[ei].z_at(theta)
                if not zs:
                    return False
                z_new = min(zs, key=lambda z: abs(lift(z - E[1])))
                try:
                    p = partner_point(d, ei, theta, z_new)
                except InvalidDiagram:
                    return False
                return p.edge == oei
            theta = pick_theta(t - radius, t + radius, ok)
            if theta is None:
                raise EpsilonTooLarge(eps, None, "no free page angle for a T-hop")
            z_new = min(d.edges[ei].z_at(theta), key=lambda z: abs(lift(z - E[1])))
            p = partner_point(d, ei, theta, z_new)
            wire = _hop_wire(theta, T, zb, z_new, To, p.z, zob, first_in)
        used.add(wire.theta)
        wires.append(wire)

    fixed = _order_vertex_wires(f, plan, used, ends_ok)
    for si, k, ka, kb, lo, hi in plan.normal:
        T = f.strands[si].torus_index
        za, zb = anchors[ka].binding_z, anchors[kb].binding_z
        if (si, k) in fixed:
            wires.append(Wire(fixed[(si, k)], (Arc(T, za, zb),)))
            continue
        theta = pick_theta(lo, hi, lambda th: ends_ok(th, [(T, za), (T, zb)]))
        if theta is None:
            raise EpsilonTooLarge(eps, None, f"no free page angle for strand {si}")
        used.add(theta)
        wires.append(Wire(theta, (Arc(T, za, zb),)))
    return wires


def _order_vertex_wires(f: GraphFront, plan: _Plan, used, ends_ok):
    """Fix the page angles of wires at vertices of valence three or more.

    The angles increase (cyclically) in the counterclockwise order of the
    edges at the vertex, so the binding vertex sees its wires in the same
    cyclic order as the ribbon.  Steep-piece ranges are tried first, then
    the whole theta range of each segment.
    """
    info = {}
    for si, k, ka, kb, lo, hi in plan.normal:
        A, B = f.strands[si].points[k], f.strands[si].points[k + 1]
        dt = delta(A, B)[0]
        full = (min(A[0], A[0] + dt), max(A[0], A[0] + dt))
        ends = [(f.strands[si].torus_index, plan.anchors[x].binding_z) for x in (ka, kb)]
        info[(si, k)] = ((lo, hi), full, ends)
    fixed: Dict[Tuple[int, int], Fraction] = {}
    for vid in range(len(f.vertices)):
        rot = vertex_rotation(f, vid)
        if len(rot) < 3:
            continue
        items = [(si, 0 if which == START else len(f.strands[si].points) - 2)
                 for si, which in rot]
        for which_range in (0, 1):
            got = _assign_cyclic(items, info, which_range, fixed, used, ends_ok)
            if got is not None:
                break
        else:
            raise EpsilonTooLarge(plan.eps, None,
                                  f"cannot order the wires at vertex {vid}")
        for item, theta in got.items():
            if item not in fixed:
                fixed[item] = theta
                used.add(theta)
    return fixed


def _assign_cyclic(items, info, which_range, fixed, used, ends_ok):
    ref = info[items[0]][which_range][0]

    def near(lo, hi):
        mid = (lo + hi) / 2
        n = round(mid - ref)
        return lo - n, hi - n
    for r in range(len(items)):
        seq = items[r:] + items[:r]
        cur = None
        first = None
        got = {}
        ok = True
        for item in seq:
            lo, hi = near(*info[item][which_range])
            ends = info[item][2]
            if item in fixed or item in got:
                theta = fixed.get(item, got.get(item))
                lifted = lo + wrap(theta - lo)
                if cur is not None and not lifted > cur:
                    ok = False
                    break
                cur = lifted
            else:
                if cur is not None:
                    lo = max(lo, cur)
                if not lo < hi:
                    ok = False
                    break
                theta = pick_theta(lo, lo + (hi - lo) / 8,
                                   lambda th: th not in got.values() and ends_ok(th, ends))
                if theta is None:
                    ok = False
                    break
                got[item] = theta
                cur = lo + wrap(theta - lo)
            if first is None:
                first = cur
        if ok and cur < first + 1:
            return got
    return None


def _hop_wire(theta, T, zb, zE, To, zoE, zob, first_in):
    if first_in:
        return Wire(theta, (Arc(T, zb, zE), Arc(To, zoE, zob)))
    return Wire(theta, (Arc(To, zob, zoE), Arc(T, zE, zb)))


def _record(f: GraphFront, plan: _Plan, a: ArcDiagram) -> SubdivisionRecord:
    idx = a.vertex_index()
    recs = []
    order = sorted(plan.anchors.values(), key=lambda x: idx[(x.torus, x.binding_z)])
    for x in order:
        recs.append(AnchorRecord(
            x.kind, x.key[1] if x.key[0] == "P" else -1,
            x.key[2] if x.key[0] == "P" else -1,
            x.key[1] if x.key[0] == "V" else -1,
            x.torus, x.theta, x.z, x.binding_z))
    seqs = []
    for c in chains(f):
        seq = []
        for si, forward in c.steps:
            m = len(f.strands[si].points) - 1
            js = range(m + 1) if forward else range(m, -1, -1)
            for j in js:
                key = _anchor_key(f, si, j)
                if key is None:
                    continue
                b = idx[(plan.anchors[key].torus, plan.anchors[key].binding_z)]
                if not seq or seq[-1] != b:
                    seq.append(b)
        if c.closed and seq and seq[-1] != seq[0]:
            seq.append(seq[0])
        seqs.append(tuple(seq))
    vmap = tuple(sorted((x.key[1], idx[(x.torus, x.binding_z)])
                        for x in plan.anchors.values() if x.key[0] == "V"))
    return SubdivisionRecord(plan.eps, tuple(recs), tuple(seqs), vmap)


def auto_epsilon(f: GraphFront) -> Fraction:
    """Half the least slope feature ``min(|s|, 1/|s|)`` of the front, at most 1/4."""
    best = Fraction(1, 2)
    for s in f.strands:
        for k, (p, dd) in enumerate(s.segments()):
            if s.terminal(k) or dd[0] == 0 or dd[1] == 0:
                continue
            sl = abs(dd[1] / dd[0])
            best = min(best, sl, 1 / sl)
    return best / 2


def to_arc_position(f: GraphFront, epsilon="auto", max_halvings: int = 40):
    """Arc diagram of the front plus the record of every subdivision.

    With ``epsilon="auto"`` the run starts from :func:`auto_epsilon` and
    halves epsilon whenever a step reports it too large.
    """
    _require_valid(f)
    auto = epsilon in (None, "auto")
    eps = auto_epsilon(f) if auto else Fraction(epsilon)
    if eps <= 0:
        raise PreconditionViolation("epsilon must be positive")
    tries = max_halvings if auto else 1
    last = None
    for _ in range(tries):
        try:
            plan = _plan(f, eps)
            wires = _build_wires(f, plan)
            a = ArcDiagram(f.diagram, wires)
            rep = validate_arc_diagram(a)
            if not rep.ok:
                raise EpsilonTooLarge(eps, None, "arc check: " + ", ".join(rep.codes()))
            expected = abstract_graph(f).euler_char
            if a.euler_char != expected:
                raise EpsilonTooLarge(eps, None, "binding vertices merged")
            return a, _record(f, plan, a)
        except EpsilonTooLarge as exc:
            last = exc
            eps = eps / 2
    raise last
