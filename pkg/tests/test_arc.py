from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from openbook_ribbons.arc import (Arc, ArcDiagram, Wire, arc_diagram_summary,
                                  epsilon_bound, to_cusped, validate_arc_diagram,
                                  validate_cusped)
from openbook_ribbons.exceptions import EpsilonTooLarge
from openbook_ribbons.front import BUILTIN_FRONTS, builtin_front, random_graph_front
from openbook_ribbons.geometry import wrap
from openbook_ribbons.morse import BUILTIN_DIAGRAMS, builtin_diagram
from openbook_ribbons.position import to_arc_position

DISK = builtin_diagram("disk_identity")


def brute_bound(a):
    """Half the least circular distance between a wire and any other wire or vertex slice."""
    thetas = [w.theta for w in a.wires]
    marks = thetas + list(a.diagram.vertex_thetas())
    best = F(1)
    for i, t in enumerate(thetas):
        for j, u in enumerate(marks):
            if j == i or u == t:
                continue
            gap = wrap(u - t)
            best = min(best, gap, 1 - gap)
    return best / 2


@pytest.fixture(scope="module")
def positioned():
    return {n: to_arc_position(builtin_front(n))[0] for n in BUILTIN_FRONTS}


def test_single_wire_is_valid():
    a = ArcDiagram(DISK, [Wire(F(1, 2), [Arc(0, F(1, 4), F(1, 2))])])
    assert validate_arc_diagram(a).ok
    assert a.incidence() == [(0, 1)]
    assert a.euler_char == 1


def test_wire_through_skeleton():
    d = builtin_diagram("ex_2_1_a")
    # on slice 1/6 torus 0 meets T at 1/6 and torus 1 at 2/3
    w = Wire(F(1, 6), [Arc(0, F(0), F(1, 6)), Arc(1, F(2, 3), F(3, 4))])
    assert validate_arc_diagram(ArcDiagram(d, [w])).ok


def test_unmatched_internal_end():
    d = builtin_diagram("ex_2_1_a")
    w = Wire(F(1, 6), [Arc(0, F(0), F(1, 6)), Arc(1, F(3, 4), F(7, 8))])
    assert "UnmatchedInternalEnd" in validate_arc_diagram(ArcDiagram(d, [w])).code_set()


def test_wire_end_on_skeleton_is_orphan():
    d = builtin_diagram("ex_2_1_a")
    w = Wire(F(1, 6), [Arc(0, F(0), F(1, 6))])
    assert "OrphanEnd" in validate_arc_diagram(ArcDiagram(d, [w])).code_set()


def test_theta_collision(positioned):
    a = positioned["theta_graph"]
    wires = list(a.wires)
    wires[1] = replace(wires[1], theta=wires[0].theta)
    assert "ThetaCollision" in validate_arc_diagram(replace(a, wires=tuple(wires))).code_set()


def test_degenerate_arc():
    bad = ArcDiagram(DISK, [Wire(F(1, 2), [Arc(0, F(1, 4), F(1, 4))])])
    assert validate_arc_diagram(bad).code_set() == {"DegenerateArc"}


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_epsilon_bound_matches_gap_scan(positioned, name):
    a = positioned[name]
    assert epsilon_bound(a) == brute_bound(a)


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_epsilon_too_large_reports_bound(positioned, name):
    a = positioned[name]
    bound = brute_bound(a)
    with pytest.raises(EpsilonTooLarge) as info:
        to_cusped(a, bound)
    assert info.value.bound == bound


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_cusped_graph_is_epsilon_independent(positioned, name):
    a = positioned[name]
    eps = epsilon_bound(a) / 2
    c1, c2 = to_cusped(a, eps), to_cusped(a, eps / 2)
    assert validate_cusped(c1).ok and validate_cusped(c2).ok
    assert c1.incidence() == c2.incidence() == a.incidence()


def test_cusped_small_epsilon_on_skeleton_front(positioned):
    a = positioned["knot_through_skeleton"]
    eps = epsilon_bound(a) / 4
    c = to_cusped(a, eps)
    assert validate_cusped(c).ok
    slopes = {(q[1] - p[1]) / (q[0] - p[0])
              for s in c.strands for p, q, k in zip(s.points, s.points[1:], s.kinds)
              if k == "steep"}
    assert slopes == {-1 / eps}


def test_summary_counts(positioned):
    summ = arc_diagram_summary(positioned["knot_through_skeleton"])
    assert summ["t_crossings"] == 2
    assert summ["vertices"] == summ["wires"]
    assert summ["euler_char"] == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 5000), st.sampled_from(sorted(BUILTIN_DIAGRAMS)))
def test_random_positioned_fronts_smooth(seed, name):
    f = random_graph_front(seed, 1 + seed % 4, builtin_diagram(name))
    a, _ = to_arc_position(f)
    assert validate_arc_diagram(a).ok
    if a.wires:
        c = to_cusped(a, epsilon_bound(a) / 2)
        assert validate_cusped(c).ok
