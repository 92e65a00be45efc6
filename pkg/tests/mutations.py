"""Single-field mutations of the built-in diagrams and the axiom each breaks."""
from dataclasses import replace
from fractions import Fraction as F

from openbook_ribbons.morse import builtin_diagram


def _edge(d, k, **kw):
    edges = list(d.edges)
    edges[k] = replace(edges[k], **kw)
    return replace(d, edges=tuple(edges))


def _point(d, k, i, pt):
    pts = list(d.edges[k].points)
    pts[i] = pt
    if i == 0 and d.edges[k].closed:
        pts[-1] = pt
    return _edge(d, k, points=tuple(pts))


def _vertex(d, k, **kw):
    vs = list(d.vertices)
    vs[k] = replace(vs[k], **kw)
    return replace(d, vertices=tuple(vs))


def mutations():
    a, b, c = (builtin_diagram(n) for n in ("ex_2_1_a", "ex_2_1_b", "ex_2_1_c"))
    return [
        ("a: relabel the curve on torus 1", _edge(a, 1, label="b"), "axiom-ii"),
        ("c: relabel the curve on torus 0", _edge(c, 0, label="b"), "axiom-ii"),
        ("b: relabel the closed a-curve", _edge(b, 2, label="c"), "axiom-ii"),
        ("b: vertical piece on the closed curve", _point(b, 2, 2, (F(1, 4), F(5, 8))), "axiom-i"),
        ("c: vertical piece at theta 0", _point(c, 1, 1, (F(0), F(17, 32))), "axiom-i"),
        ("c: vertical piece at theta 1/4", _point(c, 1, 2, (F(1, 4), F(1, 2))), "axiom-i"),
        ("a: both curves on torus 0", _edge(a, 1, torus_index=0), "axiom-iii"),
        ("a: extra empty torus", replace(a, n=3), "axiom-iii"),
        ("b: extra empty torus", replace(b, n=2), "axiom-iii"),
        ("disk: extra empty torus", replace(builtin_diagram("disk_identity"), n=2), "axiom-iii"),
        ("b: flipped side flag", _vertex(b, 0, side="R"), "axiom-iv"),
        ("b: wrong partner", _vertex(b, 0, partner=2), "axiom-iv"),
        ("b: wrong x label", _vertex(b, 2, x_label="b"), "axiom-iv"),
    ]
