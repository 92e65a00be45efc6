from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from openbook_ribbons.arc import validate_arc_diagram
from openbook_ribbons.exceptions import EpsilonTooLarge, PreconditionViolation
from openbook_ribbons.front import (BUILTIN_FRONTS, FrontStrand, GraphFront, abstract_graph,
                                    builtin_front, random_graph_front, subdivide_edge)
from openbook_ribbons.morse import BUILTIN_DIAGRAMS, builtin_diagram
from openbook_ribbons.position import (auto_epsilon, slanted_rectangular_approximation,
                                       to_arc_position)
from openbook_ribbons.surface import invariant_report, ribbon_to_bennequin

DISK = builtin_diagram("disk_identity")


def test_constant_slope_staircase():
    f = builtin_front("slope_one_loop")
    eps = F(1, 8)
    g = slanted_rectangular_approximation(f, eps)
    assert g.slopes() == {-eps, -1 / eps}
    counts = g.kind_counts()
    assert counts["shallow"] == counts["steep"] > 0


def test_cusps_survive_approximation():
    f = builtin_front("unknot_lens")
    g = slanted_rectangular_approximation(f, F(1, 16))
    assert len(g.cusps) == f.cusp_count() == 2


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_only_two_slopes(name):
    f = builtin_front(name)
    eps = auto_epsilon(f) / 2
    assert slanted_rectangular_approximation(f, eps).slopes() <= {-eps, -1 / eps}


def test_steep_slopes_reject_large_epsilon():
    with pytest.raises(EpsilonTooLarge):
        slanted_rectangular_approximation(builtin_front("slope_one_loop"), F(1))


def test_closed_loop_gives_circle_graph():
    f = builtin_front("slope_one_loop")
    a, rec = to_arc_position(f)
    k = rec.subdivisions
    assert len(a.wires) == len(a.binding_vertices()) == k > 0
    assert a.euler_char == 0


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_euler_char_preserved(name):
    f = builtin_front(name)
    a, rec = to_arc_position(f)
    assert validate_arc_diagram(a).ok
    assert a.euler_char == abstract_graph(f).euler_char
    assert len(a.binding_vertices()) == len(rec.anchors)
    assert len(a.wires) == sum(len(c) - 1 for c in rec.chains)


def test_record_serializes():
    _, rec = to_arc_position(builtin_front("theta_graph"))
    text = rec.to_json()
    assert '"chains"' in text and str(rec.epsilon) in text


def test_explicit_epsilon_too_large():
    with pytest.raises(EpsilonTooLarge):
        to_arc_position(builtin_front("unknot_lens"), F(1, 2))


def test_invalid_front_rejected():
    bad = GraphFront(DISK, [FrontStrand(0, [(0, 0), (F(1, 3), F(1, 3)), (F(2, 3), F(2, 3)),
                                            (0, 0)])])
    with pytest.raises(PreconditionViolation):
        to_arc_position(bad)


def test_empty_front():
    a, rec = to_arc_position(GraphFront(DISK))
    assert a.wires == () and rec.subdivisions == 0


def test_subdivision_keeps_ribbon_invariants():
    f = builtin_front("slope_one_loop")
    g = subdivide_edge(f, 0, (F(1, 6), F(5, 6)))
    r1 = invariant_report(ribbon_to_bennequin(to_arc_position(f)[0]))
    r2 = invariant_report(ribbon_to_bennequin(to_arc_position(g)[0]))
    keys = ("euler_char", "boundary_components", "self_linking", "bennequin_slack", "is_sqp")
    assert [getattr(r1, k) for k in keys] == [getattr(r2, k) for k in keys]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(sorted(BUILTIN_DIAGRAMS)))
def test_random_fronts_position(seed, name):
    f = random_graph_front(seed, 1 + seed % 5, builtin_diagram(name))
    a, rec = to_arc_position(f)
    assert validate_arc_diagram(a).ok
    assert a.euler_char == abstract_graph(f).euler_char
