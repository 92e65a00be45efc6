import random
from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from openbook_ribbons.exceptions import PointNotOnStrand, TangentialCrossing, UnknownName
from openbook_ribbons.front import (BUILTIN_FRONTS, End, FrontStrand, FrontVertex,
                                    GraphFront, abstract_graph, builtin_front, chains,
                                    depth, find_crossings, random_graph_front,
                                    resolve_crossings, subdivide_edge, validate_front,
                                    vertex_rotation)
from openbook_ribbons.morse import BUILTIN_DIAGRAMS, builtin_diagram

DISK = builtin_diagram("disk_identity")


def line_strand(slope_num, steps, offset):
    """Closed strand z = -slope_num * theta + offset sampled at ``steps`` points."""
    pts = [(F(k, steps), offset - slope_num * F(k, steps)) for k in range(steps)]
    return FrontStrand(0, pts + [pts[0]])


def crossing_front(rng):
    gentle = [line_strand(1, 4, F(rng.choice([1, 3, 5]), 7) + k * F(1, 3)) for k in range(2)]
    steep = [line_strand(3, 8, F(k, 11)) for k in range(5)]
    return GraphFront(DISK, gentle + steep)


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_builtin_fronts_are_valid(name):
    f = builtin_front(name)
    assert validate_front(f, f.diagram).ok


def test_constant_slope_loop_is_valid():
    f = GraphFront(DISK, [line_strand(1, 4, F(0))])
    assert validate_front(f, DISK).ok


def test_positive_segment_is_a_slope_violation():
    s = line_strand(1, 6, F(0))
    pts = list(s.points)
    pts[2] = (F(1, 3), F(1, 1))
    bad = GraphFront(DISK, [replace(s, points=tuple(pts))])
    rep = validate_front(bad, DISK)
    assert rep.code_set() == {"SlopeViolation"}
    flagged = {dict(i.where).get("segment") for i in rep.issues}
    assert 1 in flagged


def test_unmatched_end_when_partner_removed():
    f = builtin_front("knot_through_skeleton")
    half = GraphFront(f.diagram, f.strands[:1])
    assert "UnmatchedEnd" in validate_front(half).code_set()


def test_flipped_side_flag_is_reported():
    f = builtin_front("knot_through_skeleton")
    s = f.strands[0]
    flipped = replace(s, start=End("T", s.start.ref, "R"))
    rep = validate_front(replace(f, strands=(flipped,) + f.strands[1:]))
    assert not rep.ok


def test_unmarked_cusp_is_reported():
    f = builtin_front("unknot_lens")
    s = replace(f.strands[0], cusps=frozenset({0}))
    assert "SlopeViolation" in validate_front(replace(f, strands=(s,))).code_set()


def test_isolated_vertex():
    f = builtin_front("slope_one_loop")
    g = replace(f, vertices=(FrontVertex(0, F(1, 7), F(1, 9)),))
    assert "IsolatedVertex" in validate_front(g).code_set()


def test_depth_is_minus_slope():
    assert depth((F(1), F(-3))) == 3
    assert depth((F(-1, 2), F(1, 4))) == F(1, 2)


@pytest.mark.parametrize("steep,gentle", [(3, 1), (2, F(1, 2))])
def test_gentler_strand_is_nearer(steep, gentle):
    a = line_strand(gentle, 8, F(1, 7))
    b = line_strand(steep, 8, F(0))
    f = resolve_crossings(GraphFront(DISK, [a, b]))
    assert f.crossings
    assert all(c.near == 0 for c in f.crossings)


def test_random_crossings_resolve_equivariantly():
    rng = random.Random(11)
    f = resolve_crossings(crossing_front(rng))
    assert len(f.crossings) == 20
    assert validate_front(f).ok
    nearer = {(c.theta, c.z): f.strands[c.near] for c in f.crossings}
    perm = list(range(len(f.strands)))
    rng.shuffle(perm)
    g = resolve_crossings(GraphFront(DISK, [f.strands[i] for i in perm]))
    assert {(c.theta, c.z): g.strands[c.near] for c in g.crossings} == nearer
    assert resolve_crossings(f) == f


def test_tangential_crossing_raises():
    # two loops of slope -1 sharing a stretch of their image
    a = line_strand(1, 4, F(0))
    b = line_strand(1, 8, F(0))
    with pytest.raises(TangentialCrossing):
        resolve_crossings(GraphFront(DISK, [a, b]))


def test_subdivide_closed_loop():
    f = builtin_front("slope_one_loop")
    g = subdivide_edge(f, 0, (F(1, 6), F(5, 6)))
    ag = abstract_graph(g)
    assert (ag.n_vertices, len(ag.edges)) == (1, 1)
    assert validate_front(g).ok


def test_subdivide_preserves_graph_euler_char():
    f = builtin_front("theta_graph")
    chi = abstract_graph(f).euler_char
    g = subdivide_edge(f, 1, (F(5, 16), F(5, 8)))
    g = subdivide_edge(g, 0, (F(7, 16), F(13, 32) + F(0)))
    assert validate_front(g).ok
    assert abstract_graph(g).euler_char == chi
    assert abstract_graph(g).n_vertices == 4


def test_subdivide_off_strand():
    with pytest.raises(PointNotOnStrand):
        subdivide_edge(builtin_front("slope_one_loop"), 0, (F(1, 6), F(1, 6)))


def test_vertex_rotation_theta_graph():
    f = builtin_front("theta_graph")
    # all three edges leave U to the right; the steepest descent (largest x) last
    assert vertex_rotation(f, 0) == [(0, "start"), (1, "start"), (2, "start")]
    # at V all edges leave to the left, so the largest x comes first
    assert vertex_rotation(f, 1) == [(0, "end"), (1, "end"), (2, "end")]


def test_chains_join_matched_ends():
    f = builtin_front("knot_through_skeleton")
    cs = chains(f)
    assert len(cs) == 1 and cs[0].closed and len(cs[0].steps) == 2


def test_seed_zero_disk_is_single_loop():
    f = random_graph_front(0, 1, DISK)
    assert len(f.strands) == 1 and f.strands[0].closed
    assert all(s < 0 for s in [dd[1] / dd[0] for _, dd in f.strands[0].segments()
                                if dd[0] > 0])


def test_seed_seven_on_ex_2_1_b():
    d = builtin_diagram("ex_2_1_b")
    f = random_graph_front(7, 5, d)
    assert 1 <= len(f.strands) <= 5
    assert validate_front(f, d).ok
    assert random_graph_front(7, 5, d) == f


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.sampled_from(sorted(BUILTIN_DIAGRAMS)))
def test_generator_always_valid(seed, size, name):
    d = builtin_diagram(name)
    f = random_graph_front(seed, size, d)
    assert len(f.strands) <= size
    assert validate_front(f, d).ok


def test_generator_size_zero_is_empty():
    f = random_graph_front(0, 0, DISK)
    assert f.strands == () and validate_front(f).ok


def test_unknown_builtin_front():
    with pytest.raises(UnknownName):
        builtin_front("nope")


def test_find_crossings_reports_none_for_disjoint():
    crossings, bad = find_crossings(builtin_front("theta_graph"))
    assert crossings == [] and bad == []
