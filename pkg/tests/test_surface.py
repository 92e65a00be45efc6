import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import braid_closure_components, components, fat_graph_faces
from openbook_ribbons.arc import Arc, ArcDiagram, Wire
from openbook_ribbons.exceptions import (IndexOutOfRange, InvalidArcDiagram,
                                         NotDestabilizable, SelfBand, ThetaCollision)
from openbook_ribbons.front import (BUILTIN_FRONTS, abstract_graph, builtin_front, random_graph_front,
                                    subdivide_edge)
from openbook_ribbons.morse import BUILTIN_DIAGRAMS, builtin_diagram
from openbook_ribbons.position import to_arc_position
from openbook_ribbons.surface import (FROM_RIBBON, Band,
                                      bennequin_from_bands, bennequin_slack,
                                      boundary_components, cell_complex,
                                      connected_components, destabilize,
                                      euler_characteristic, invariant_report,
                                      is_strongly_quasipositive,
                                      positive_markov_stabilization, ribbon_front,
                                      ribbon_to_bennequin, self_linking)


def torus_link(q, sign=1):
    return bennequin_from_bands(2, [(F(k + 1, q + 1), 0, 1, sign) for k in range(q)])


@st.composite
def surfaces(draw, max_d=6, max_b=8):
    d = draw(st.integers(1, max_d))
    b = draw(st.integers(0, max_b)) if d > 1 else 0
    thetas = draw(st.lists(st.integers(1, 199), min_size=b, max_size=b, unique=True))
    bands = []
    for t in thetas:
        i = draw(st.integers(0, d - 1))
        j = draw(st.integers(0, d - 2))
        j = j + 1 if j >= i else j
        bands.append((F(t, 200), i, j, draw(st.sampled_from([1, -1]))))
    return bennequin_from_bands(d, bands)


def test_trefoil():
    s = torus_link(3)
    r = invariant_report(s)
    assert (r.euler_char, r.self_linking, r.boundary_components) == (-1, 1, 1)
    assert r.is_sqp and r.bennequin_slack == 0


def test_unknot_one_braid():
    r = invariant_report(bennequin_from_bands(1, []))
    assert (r.euler_char, r.self_linking, r.boundary_components) == (1, -1, 1)


@pytest.mark.parametrize("q", range(2, 7))
def test_torus_links(q):
    s = torus_link(q)
    assert euler_characteristic(s) == 2 - q == cell_complex(s).euler_char
    assert self_linking(s) == q - 2
    expected = 2 if q % 2 == 0 else 1
    assert boundary_components(s) == expected
    assert braid_closure_components(2, [(b.theta, b.i, b.j, b.sign) for b in s.bands]) == expected


def test_negative_bands_slack():
    s = torus_link(3, sign=-1)
    assert self_linking(s) == -5
    assert bennequin_slack(s) == 6
    assert not is_strongly_quasipositive(s)


def test_one_negative_band():
    s = bennequin_from_bands(2, [(F(1, 3), 0, 1, 1), (F(2, 3), 0, 1, -1)])
    assert bennequin_slack(s) == 2


def test_disconnected_surface():
    s = bennequin_from_bands(3, [(F(1, 3), 0, 1, 1), (F(2, 3), 0, 1, 1)])
    assert euler_characteristic(s) == 1
    assert connected_components(s) == 2


def test_constructor_errors():
    with pytest.raises(IndexOutOfRange):
        bennequin_from_bands(2, [(F(1, 2), 0, 2, 1)])
    with pytest.raises(ThetaCollision):
        bennequin_from_bands(2, [(F(1, 2), 0, 1, 1), (F(1, 2), 1, 0, 1)])
    with pytest.raises(SelfBand):
        bennequin_from_bands(2, [(F(1, 2), 1, 1, 1)])
    with pytest.raises(ValueError):
        Band(F(1, 2), 0, 1, 0)


@settings(max_examples=200)
@given(surfaces())
def test_invariant_identities(s):
    r = invariant_report(s)
    assert r.euler_char == s.d - s.b_plus - s.b_minus == cell_complex(s).euler_char
    assert r.self_linking == (s.b_plus - s.b_minus) - s.d
    assert r.bennequin_slack == -r.euler_char - r.self_linking == 2 * s.b_minus
    assert r.is_sqp == (s.b_minus == 0)
    bands = [(b.theta, b.i, b.j, b.sign) for b in s.bands]
    assert r.boundary_components == braid_closure_components(s.d, bands) == fat_graph_faces(s)
    assert connected_components(s) == components(s)


def test_exhaustive_small_cases():
    rng = random.Random(5)
    for d in range(1, 7):
        for b in range(0, 9 if d > 1 else 1):
            bands = []
            for k in range(b):
                i, j = rng.sample(range(d), 2)
                bands.append((F(k + 1, b + 1), i, j, rng.choice([1, -1])))
            s = bennequin_from_bands(d, bands)
            assert cell_complex(s).euler_char == d - b
            assert boundary_components(s) == braid_closure_components(d, bands)


def test_stabilize_unknot():
    s = positive_markov_stabilization(bennequin_from_bands(1, []))
    assert (s.d, s.b_plus) == (2, 1)
    assert self_linking(s) == -1


@settings(max_examples=50)
@given(surfaces(max_d=5, max_b=6))
def test_stabilization_invariance(s):
    keep = ("euler_char", "boundary_components", "self_linking", "bennequin_slack", "is_sqp")
    before = invariant_report(s)
    t = s
    for _ in range(3):
        t = positive_markov_stabilization(t)
        after = invariant_report(t)
        assert [getattr(after, k) for k in keep] == [getattr(before, k) for k in keep]
    assert (t.d, t.b_plus) == (s.d + 3, s.b_plus + 3)
    assert destabilize(destabilize(destabilize(t))) == s


def test_destabilize_trefoil_round_trip():
    s = positive_markov_stabilization(torus_link(3))
    assert positive_markov_stabilization(destabilize(s)) == s


def test_not_destabilizable():
    with pytest.raises(NotDestabilizable):
        destabilize(torus_link(3))


def test_ribbon_of_unknot_lens_is_annulus():
    r = ribbon_front(builtin_front("unknot_lens"))
    assert r.euler_char == 0 and r.face_count() == 2


def test_bouquet_ribbon():
    f = subdivide_edge(builtin_front("slope_one_loop"), 0, (F(1, 6), F(5, 6)))
    assert ribbon_front(f).euler_char == 0


def test_ribbon_to_bennequin_single_wire():
    d = builtin_diagram("disk_identity")
    a = ArcDiagram(d, [Wire(F(1, 2), [Arc(0, F(1, 4), F(1, 2))])])
    s = ribbon_to_bennequin(a)
    assert (s.d, s.b_plus, euler_characteristic(s)) == (2, 1, 1)
    assert s.provenance == FROM_RIBBON


def test_ribbon_to_bennequin_rejects_invalid():
    d = builtin_diagram("disk_identity")
    a = ArcDiagram(d, [Wire(F(1, 2), [Arc(0, F(1, 4), F(1, 4))])])
    with pytest.raises(InvalidArcDiagram):
        ribbon_to_bennequin(a)


@pytest.mark.parametrize("name", sorted(BUILTIN_FRONTS))
def test_builtin_pipeline_agrees_with_ribbon(name):
    f = builtin_front(name)
    s = ribbon_to_bennequin(to_arc_position(f)[0])
    rf = ribbon_front(f)
    r = invariant_report(s)
    assert r.is_sqp and r.bennequin_slack == 0 and r.self_linking == -r.euler_char
    assert r.euler_char == rf.euler_char == abstract_graph(f).euler_char
    assert r.boundary_components == rf.face_count() == fat_graph_faces(s)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(sorted(BUILTIN_DIAGRAMS)))
def test_random_pipeline_agrees_with_ribbon(seed, name):
    f = random_graph_front(seed, 1 + seed % 5, builtin_diagram(name))
    s = ribbon_to_bennequin(to_arc_position(f)[0])
    rf = ribbon_front(f)
    assert euler_characteristic(s) == rf.euler_char
    assert boundary_components(s) == rf.face_count()


def test_report_json():
    text = invariant_report(torus_link(3)).to_json()
    assert '"self_linking": 1' in text
