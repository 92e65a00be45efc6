"""Line-oriented text formats.

All rationals are written ``p/q`` (or integers); points are ``theta,z``.
Blank lines and ``#`` comments are ignored on input; writers emit a
canonical form, so ``write(parse(text)) == text`` for canonical files.

``.morse``::

    tori 1
    name ex_2_1_b
    edge 0 a 1/4,7/8 1/2,1/8 3/4,3/8
    vertex 1/4 1 a b L 0 3/8

``.front``::

    diagram builtin:disk_identity
    strand 0 closed closed cusps=0,2 1/4,5/8 1/2,3/8 3/4,1/4 1/2,1/2 1/4,5/8
    vertex 0 1/4 3/4 0:start 1:start 2:start

``.arc``::

    diagram builtin:ex_2_1_a
    wire 3/16 0:7/32:3/16 1:11/16:23/32

``.bsurf``::

    disks 2
    band 1/4 0 1 1
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Optional, Tuple

from .arc import Arc, ArcDiagram, Wire
from .exceptions import ParseError, UnknownName
from .front import End, FrontStrand, FrontVertex, GraphFront, resolve_crossings
from .morse import BUILTIN_DIAGRAMS, MorseDiagram, MorseVertex, TEdge, builtin_diagram
from .surface import FROM_BANDS, Band, BennequinSurface


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks, col = [], 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((part, col + 1))
            col += len(part)
        yield n, toks


def _num(tok, n, path=None) -> Fraction:
    text, col = tok
    try:
        if "." in text or "e" in text.lower():
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected a rational p/q, got {text!r}", n, col, path) from None


def _int(tok, n, path=None) -> int:
    text, col = tok
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}", n, col, path) from None


def _pt(tok, n, path=None):
    text, col = tok
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected theta,z, got {text!r}", n, col, path)
    return (_num((parts[0], col), n, path), _num((parts[1], col), n, path))


def _need(toks, k, n, path, what):
    if len(toks) < k:
        col = toks[-1][1] if toks else 1
        raise ParseError(f"{what}: expected at least {k - 1} fields", n, col, path)


def fr(x) -> str:
    return str(Fraction(x))


def fpt(p) -> str:
    return f"{fr(p[0])},{fr(p[1])}"


# ---------------------------------------------------------------------------
# morse


def parse_morse(text: str, path=None) -> MorseDiagram:
    n_tori, name = None, ""
    edges, verts = [], []
    for n, toks in _lines(text):
        kw = toks[0][0]
        if kw == "tori":
            _need(toks, 2, n, path, "tori")
            n_tori = _int(toks[1], n, path)
        elif kw == "name":
            _need(toks, 2, n, path, "name")
            name = toks[1][0]
        elif kw == "edge":
            _need(toks, 5, n, path, "edge")
            edges.append(TEdge(_int(toks[1], n, path), toks[2][0],
                               tuple(_pt(t, n, path) for t in toks[3:])))
        elif kw == "vertex":
            if len(toks) != 8:
                raise ParseError("vertex: expected theta partner x y side torus z",
                                 n, toks[0][1], path)
            side = toks[5][0]
            if side not in ("L", "R"):
                raise ParseError(f"side must be L or R, got {side!r}", n, toks[5][1], path)
            verts.append(MorseVertex(_num(toks[1], n, path), _int(toks[2], n, path),
                                     toks[3][0], toks[4][0], side,
                                     _int(toks[6], n, path), _num(toks[7], n, path)))
        else:
            raise ParseError(f"unknown keyword {kw!r}", n, toks[0][1], path)
    if n_tori is None:
        raise ParseError("missing 'tori' line", None, None, path)
    return MorseDiagram(n_tori, tuple(edges), tuple(verts), name)


def format_morse(d: MorseDiagram) -> str:
    out = [f"tori {d.n}"]
    if d.name:
        out.append(f"name {d.name}")
    for e in d.edges:
        out.append(" ".join(["edge", str(e.torus_index), e.label] + [fpt(p) for p in e.points]))
    for v in d.vertices:
        out.append(f"vertex {fr(v.theta)} {v.partner} {v.x_label} {v.y_label} "
                   f"{v.side} {v.torus_index} {fr(v.z)}")
    return "\n".join(out) + "\n"


def morse_to_json(d: MorseDiagram) -> str:
    obj = {
        "tori": d.n, "name": d.name,
        "edges": [{"torus": e.torus_index, "label": e.label,
                   "points": [[fr(t), fr(z)] for t, z in e.points]} for e in d.edges],
        "vertices": [{"theta": fr(v.theta), "partner": v.partner, "x": v.x_label,
                      "y": v.y_label, "side": v.side, "torus": v.torus_index,
                      "z": fr(v.z)} for v in d.vertices],
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def morse_from_json(text: str) -> MorseDiagram:
    obj = json.loads(text)
    edges = [TEdge(e["torus"], e["label"], tuple((Fraction(t), Fraction(z))
                                                  for t, z in e["points"]))
             for e in obj["edges"]]
    verts = [MorseVertex(Fraction(v["theta"]), v["partner"], v["x"], v["y"], v["side"],
                         v["torus"], Fraction(v["z"])) for v in obj["vertices"]]
    return MorseDiagram(obj["tori"], tuple(edges), tuple(verts), obj.get("name", ""))


# ---------------------------------------------------------------------------
# diagram references


def resolve_diagram(ref: str, base_dir: Optional[str] = None, n=None, col=None,
                    path=None) -> MorseDiagram:
    """``builtin:<name>`` or a path (relative to ``base_dir``) to a .morse file."""
    if ref.startswith("builtin:"):
        try:
            return builtin_diagram(ref[len("builtin:"):])
        except UnknownName as exc:
            raise ParseError(str(exc), n, col, path) from None
    full = ref if os.path.isabs(ref) or base_dir is None else os.path.join(base_dir, ref)
    try:
        with open(full) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read diagram {ref!r}: {exc.strerror}", n, col, path) from None
    if full.endswith(".json"):
        return morse_from_json(text)
    return parse_morse(text, full)


def default_ref(d: MorseDiagram) -> str:
    if d.name in BUILTIN_DIAGRAMS and builtin_diagram(d.name) == d:
        return f"builtin:{d.name}"
    raise ValueError("diagram is not a builtin; pass an explicit reference")


def _diagram_line(toks, n, path, base_dir):
    _need(toks, 2, n, path, "diagram")
    ref = toks[1][0]
    return ref, resolve_diagram(ref, base_dir, n, toks[1][1], path)


# ---------------------------------------------------------------------------
# front


def parse_front(text: str, path=None, base_dir=None) -> Tuple[GraphFront, str]:
    ref, d = None, None
    strands, verts = [], []
    for n, toks in _lines(text):
        kw = toks[0][0]
        if kw == "diagram":
            ref, d = _diagram_line(toks, n, path, base_dir)
        elif kw == "strand":
            _need(toks, 7, n, path, "strand")
            try:
                start, end = End.parse(toks[2][0]), End.parse(toks[3][0])
            except ValueError as exc:
                raise ParseError(str(exc), n, toks[2][1], path) from None
            ctext, ccol = toks[4]
            if not ctext.startswith("cusps="):
                raise ParseError("expected cusps=<list>", n, ccol, path)
            body = ctext[len("cusps="):]
            cusps = set() if body == "-" else {
                _int((c, ccol), n, path) for c in body.split(",")}
            strands.append(FrontStrand(_int(toks[1], n, path),
                                       tuple(_pt(t, n, path) for t in toks[5:]),
                                       cusps, start, end))
        elif kw == "vertex":
            _need(toks, 4, n, path, "vertex")
            ends = []
            for t in toks[4:]:
                parts = t[0].split(":")
                if len(parts) != 2 or parts[1] not in ("start", "end"):
                    raise ParseError(f"expected strand:start|end, got {t[0]!r}", n, t[1], path)
                ends.append((_int((parts[0], t[1]), n, path), parts[1]))
            verts.append(FrontVertex(_int(toks[1], n, path), _num(toks[2], n, path),
                                     _num(toks[3], n, path), tuple(ends)))
        else:
            raise ParseError(f"unknown keyword {kw!r}", n, toks[0][1], path)
    if d is None:
        raise ParseError("missing 'diagram' line", None, None, path)
    return resolve_crossings(GraphFront(d, strands, verts)), ref


def format_front(f: GraphFront, ref: Optional[str] = None) -> str:
    out = [f"diagram {ref or default_ref(f.diagram)}"]
    for s in f.strands:
        cusps = ",".join(str(c) for c in sorted(s.cusps)) or "-"
        out.append(" ".join(["strand", str(s.torus_index), str(s.start), str(s.end),
                             f"cusps={cusps}"] + [fpt(p) for p in s.points]))
    for v in f.vertices:
        out.append(" ".join(["vertex", str(v.torus_index), fr(v.theta), fr(v.z)]
                            + [f"{si}:{w}" for si, w in v.ends]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# arc


def parse_arc(text: str, path=None, base_dir=None) -> Tuple[ArcDiagram, str]:
    ref, d = None, None
    wires = []
    for n, toks in _lines(text):
        kw = toks[0][0]
        if kw == "diagram":
            ref, d = _diagram_line(toks, n, path, base_dir)
        elif kw == "wire":
            _need(toks, 3, n, path, "wire")
            arcs = []
            for t in toks[2:]:
                parts = t[0].split(":")
                if len(parts) != 3:
                    raise ParseError(f"expected torus:z_from:z_to, got {t[0]!r}", n, t[1], path)
                arcs.append(Arc(_int((parts[0], t[1]), n, path), _num((parts[1], t[1]), n, path),
                                _num((parts[2], t[1]), n, path)))
            wires.append(Wire(_num(toks[1], n, path), tuple(arcs)))
        else:
            raise ParseError(f"unknown keyword {kw!r}", n, toks[0][1], path)
    if d is None:
        raise ParseError("missing 'diagram' line", None, None, path)
    return ArcDiagram(d, tuple(wires)), ref


def format_arc(a: ArcDiagram, ref: Optional[str] = None) -> str:
    out = [f"diagram {ref or default_ref(a.diagram)}"]
    for w in a.wires:
        out.append(" ".join(["wire", fr(w.theta)] + [
            f"{x.torus_index}:{fr(x.z_from)}:{fr(x.z_to)}" for x in w.arcs]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# bsurf


def parse_bsurf(text: str, path=None) -> BennequinSurface:
    d = None
    disks = {}
    bands = []
    provenance, back = FROM_BANDS, 0
    for n, toks in _lines(text):
        kw = toks[0][0]
        if kw == "disks":
            _need(toks, 2, n, path, "disks")
            d = _int(toks[1], n, path)
            if d < 0:
                raise ParseError("disk count must be non-negative", n, toks[1][1], path)
        elif kw == "disk":
            if len(toks) != 4:
                raise ParseError("disk: expected index torus z", n, toks[0][1], path)
            disks[_int(toks[1], n, path)] = (_int(toks[2], n, path), _num(toks[3], n, path))
        elif kw == "band":
            if len(toks) != 5:
                raise ParseError("band: expected theta i j sign", n, toks[0][1], path)
            sg = _int(toks[4], n, path)
            if sg not in (1, -1):
                raise ParseError("band sign must be 1 or -1", n, toks[4][1], path)
            bands.append(Band(_num(toks[1], n, path), _int(toks[2], n, path),
                              _int(toks[3], n, path), sg))
        elif kw == "provenance":
            _need(toks, 2, n, path, "provenance")
            provenance = toks[1][0]
        elif kw == "back_arcs":
            _need(toks, 2, n, path, "back_arcs")
            back = _int(toks[1], n, path)
        else:
            raise ParseError(f"unknown keyword {kw!r}", n, toks[0][1], path)
    if d is None:
        raise ParseError("missing 'disks' line", None, None, path)
    positions = tuple(disks.get(k, (0, Fraction(k, d))) for k in range(d))
    return BennequinSurface(positions, tuple(bands), provenance, back)


def format_bsurf(s: BennequinSurface) -> str:
    out = [f"disks {s.d}"]
    for k, (t, z) in enumerate(s.disks):
        if (t, z) != (0, Fraction(k, s.d)):
            out.append(f"disk {k} {t} {fr(z)}")
    for b in s.bands:
        out.append(f"band {fr(b.theta)} {b.i} {b.j} {b.sign}")
    if s.provenance != FROM_BANDS:
        out.append(f"provenance {s.provenance}")
    if s.back_arcs:
        out.append(f"back_arcs {s.back_arcs}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------


def read_file(path: str):
    """Parse a file by extension; returns ``(kind, object, ref)``."""
    with open(path) as fh:
        text = fh.read()
    base = os.path.dirname(os.path.abspath(path))
    if path.endswith(".morse"):
        return "morse", parse_morse(text, path), None
    if path.endswith(".morse.json"):
        try:
            return "morse", morse_from_json(text), None
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON diagram: {exc}", None, None, path) from None
    if path.endswith(".front"):
        f, ref = parse_front(text, path, base)
        return "front", f, ref
    if path.endswith(".arc"):
        a, ref = parse_arc(text, path, base)
        return "arc", a, ref
    if path.endswith(".bsurf"):
        return "bsurf", parse_bsurf(text, path), None
    raise ParseError("unknown file extension (want .morse, .front, .arc or .bsurf)",
                     None, None, path)


def format_any(kind: str, obj, ref=None) -> str:
    if kind == "morse":
        return format_morse(obj)
    if kind == "front":
        return format_front(obj, ref)
    if kind == "arc":
        return format_arc(obj, ref)
    return format_bsurf(obj)
