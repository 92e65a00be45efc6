"""Deterministic SVG drawings, one per binding torus.

Each torus is a unit square with theta to the right and z upward.
Polylines are drawn under the nine neighbouring translations and clipped
to the square, so pieces that wrap around reappear on the opposite side.
At a front crossing the strand farther from the binding is broken.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Optional
from xml.sax.saxutils import escape

from .arc import ArcDiagram
from .front import GraphFront
from .geometry import delta
from .morse import MorseDiagram, slice_points

SIZE = 400
MARGIN = 30
SHIFTS = [(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1)]


def _x(t) -> str:
    return f"{MARGIN + float(t) * SIZE:.3f}"


def _y(z) -> str:
    return f"{MARGIN + (1 - float(z)) * SIZE:.3f}"


def _line(p, q, cls):
    return (f'<line x1="{_x(p[0])}" y1="{_y(p[1])}" x2="{_x(q[0])}" '
            f'y2="{_y(q[1])}" class="{cls}"/>')


def _polyline(points, cls):
    """Draw consecutive shortest-lift segments under all translations."""
    out = []
    for p, q in zip(points, points[1:]):
        dt, dz = delta(p, q)
        for i, j in SHIFTS:
            a = (p[0] + i, p[1] + j)
            b = (a[0] + dt, a[1] + dz)
            if max(a[0], b[0]) < 0 or min(a[0], b[0]) > 1:
                continue
            if max(a[1], b[1]) < 0 or min(a[1], b[1]) > 1:
                continue
            out.append(_line(a, b, cls))
    return out


def _dot(p, r, cls):
    return f'<circle cx="{_x(p[0])}" cy="{_y(p[1])}" r="{r}" class="{cls}"/>'


STYLE = (".frame{fill:#ffffff;stroke:#444444;stroke-width:1}"
         ".t{stroke:#888888;stroke-width:2;fill:none}"
         ".strand{stroke:#000000;stroke-width:1.5;fill:none}"
         ".gap{stroke:#ffffff;stroke-width:5}"
         ".wire{stroke:#1f5fbf;stroke-width:1.5}"
         ".bind{stroke:#1f5fbf;stroke-width:0.5;stroke-dasharray:4 3}"
         ".mv{fill:#888888}.cusp{fill:#c03030}.gv{fill:#000000}"
         "text{font-family:monospace;font-size:11px}")


def render_torus(d: MorseDiagram, torus: int, front: Optional[GraphFront] = None,
                 arc: Optional[ArcDiagram] = None) -> str:
    body: List[str] = []
    meta = {"torus": torus, "t_edges": 0, "vertex_pairs": 0}
    for e in d.edges:
        if e.torus_index == torus:
            meta["t_edges"] += 1
            body += _polyline(e.points, "t")
    vs = [v for v in d.vertices if v.torus_index == torus]
    meta["vertex_pairs"] = sum(1 for k, v in enumerate(d.vertices)
                               if v.torus_index == torus and k < v.partner)
    for v in vs:
        body.append(_dot(v.tz, 3, "mv"))
    samples = d.generic_slices()
    meta["slice_points"] = len([p for p in slice_points(d, samples[0])
                                if p.torus_index == torus]) if samples else 0
    if front is not None:
        strands = [s for s in front.strands if s.torus_index == torus]
        meta["strands"] = len(strands)
        meta["cusps"] = sum(len(s.cusps) for s in strands)
        for s in strands:
            body += _polyline(s.points, "strand")
            for c in sorted(s.cusps):
                body.append(_dot(s.points[c], 2.5, "cusp"))
        for v in front.vertices:
            if v.torus_index == torus:
                body.append(_dot(v.tz, 3, "gv"))
        cr = [c for c in front.crossings if c.torus_index == torus]
        meta["crossings"] = len(cr)
        for c in cr:
            far = front.strands[c.far]
            near = front.strands[c.near]
            seg_far = c.seg_a if c.far == c.strand_a else c.seg_b
            seg_near = c.seg_a if c.near == c.strand_a else c.seg_b
            for strand, seg, cls in ((far, seg_far, "gap"), (near, seg_near, "strand")):
                p, q = strand.points[seg], strand.points[seg + 1]
                dt, dz = delta(p, q)
                norm = max(abs(dt), abs(dz))
                h = Fraction(1, 80) / norm
                a = (c.theta - h * dt, c.z - h * dz)
                b = (c.theta + h * dt, c.z + h * dz)
                body.append(_line(a, b, cls))
    if arc is not None:
        wires = 0
        for z in sorted({z for t, z in arc.binding_vertices() if t == torus}):
            body.append(_line((0, z), (1, z), "bind"))
        for w in arc.wires:
            hit = False
            for a in w.arcs:
                if a.torus_index != torus:
                    continue
                hit = True
                body += _polyline([(w.theta, a.z_from), (w.theta, a.z_from + a.length)], "wire")
            wires += hit
        meta["wires"] = wires
    total = SIZE + 2 * MARGIN
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
        f"<desc>{escape(json.dumps(meta, sort_keys=True))}</desc>",
        f"<style>{STYLE}</style>",
        f'<clipPath id="sq{torus}"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" '
        f'height="{SIZE}"/></clipPath>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" class="frame"/>',
        f'<text x="{MARGIN}" y="{MARGIN - 10}">torus {torus}'
        f'{" " + escape(d.name) if d.name else ""}</text>',
        f'<g clip-path="url(#sq{torus})">',
    ]
    return "\n".join(head + body + ["</g>", "</svg>"]) + "\n"


def render(d: MorseDiagram, front: Optional[GraphFront] = None,
           arc: Optional[ArcDiagram] = None) -> List[str]:
    return [render_torus(d, t, front, arc) for t in range(d.n)]


def svg_metadata(svg: str) -> dict:
    start = svg.index("<desc>") + len("<desc>")
    end = svg.index("</desc>")
    text = svg[start:end].replace("&quot;", '"').replace("&amp;", "&")
    return json.loads(text)
