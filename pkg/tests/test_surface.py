import itertools
from fractions import Fraction

import pytest
from shapely.geometry import Polygon

from conftest import CATALOG_NAMES, random_sl2z
from tsurf import catalog
from tsurf.catalog import QSQRT2
from tsurf.errors import (
    AngleNotMultipleOf2Pi,
    BadChord,
    BadField,
    BadMark,
    MultiPolygonUnsupported,
    NetSyntaxError,
    NotConnected,
    NotSimple,
    OrientationReversing,
    PairingMismatch,
    SingularMatrix,
)
from tsurf.surface import (
    Vec2,
    apply_matrix,
    area,
    is_convex_pattern,
    is_face_to_face,
    parse_net,
    serialize_net,
    stratum,
    subdivide,
    triangulate,
    vertex_cycles,
)

TORUS = """\
field 1 0 -1 1
polygon sq
v 0 0
v 1 0
v 1 1
v 0 1
pair sq.0 sq.2
pair sq.1 sq.3
mark sq.0
"""


def test_parse_torus():
    net = parse_net(TORUS)
    assert len(net.polygons) == 1
    assert area(net) == 1


def test_perturbed_vertex_breaks_pairing():
    with pytest.raises(PairingMismatch):
        parse_net(TORUS.replace("v 1 1", "v 1 6:5"))


def test_two_tori_not_connected():
    two = TORUS + "\n".join(
        ["polygon b", "v 2 0", "v 3 0", "v 3 1", "v 2 1", "pair b.0 b.2", "pair b.1 b.3"]
    )
    with pytest.raises(NotConnected):
        parse_net(two)


def test_syntax_error_has_position():
    with pytest.raises(NetSyntaxError) as exc:
        parse_net(TORUS.replace("v 1 0", "v 1 zero"))
    assert exc.value.line == 4
    assert exc.value.column is not None


def test_clockwise_polygon_rejected():
    text = TORUS.replace("v 1 0\nv 1 1\nv 0 1", "v 0 1\nv 1 1\nv 1 0")
    with pytest.raises((NotSimple, PairingMismatch)):
        parse_net(text)


def test_bad_field_header():
    with pytest.raises((BadField, NetSyntaxError)):
        parse_net(TORUS.replace("field 1 0 -1 1", "field 2 -4 0 1 3"))


def test_mark_on_singularity_rejected():
    text = serialize_net(catalog.l_origami()) + "mark 0.0\n"
    with pytest.raises(BadMark):
        parse_net(text)


def test_bad_angle():
    # a square whose edges are paired with a rotation-free but angle-breaking gluing
    text = """\
field 1 0 -1 1
polygon a
v 0 0
v 2 0
v 2 1
v 1 1
v 1 2
v 0 2
pair a.0 a.3
pair a.1 a.4
pair a.2 a.5
"""
    with pytest.raises((PairingMismatch, AngleNotMultipleOf2Pi)):
        parse_net(text)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_roundtrip(name, nets):
    net = nets[name]
    text = serialize_net(net)
    again = parse_net(text)
    assert again == net
    assert serialize_net(again) == text


def test_vertex_cycle_examples(nets):
    (t,) = vertex_cycles(nets["torus"])
    assert (len(t.corners), t.turns, t.multiplicity) == (4, 1, 0)
    (l3,) = vertex_cycles(nets["l3"])
    assert (l3.turns, l3.multiplicity) == (3, 2)
    (o,) = vertex_cycles(nets["octagon"])
    assert (len(o.corners), o.turns) == (8, 3)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_vertex_cycles_partition(name, nets):
    net = nets[name]
    corners = [c for s in vertex_cycles(net) for c in s.corners]
    expected = [(p, i) for p, poly in enumerate(net.polygons) for i in range(len(poly))]
    assert sorted(corners) == expected


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_edge_vectors_cancel(name, nets):
    net = nets[name]
    for h, g in net.edge_pairs():
        assert (net.edge_vector(*h) + net.edge_vector(*g)).is_zero()


def test_strata(nets):
    assert stratum(nets["l3"]).multiplicities == (2,) and stratum(nets["l3"]).genus == 2
    assert stratum(nets["torus"]).multiplicities == () and stratum(nets["torus"]).genus == 1
    assert stratum(nets["staircase"]).multiplicities == (1, 1)


def test_area_examples(nets):
    a = QSQRT2.gen()
    assert area(nets["torus"]) == 1
    assert area(nets["l3"]) == 3
    assert area(nets["octagon"]) == 2 + 2 * a


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_area_matches_float_oracle(name, nets):
    net = nets[name]
    approx = sum(Polygon([(float(v.x), float(v.y)) for v in poly]).area for poly in net.polygons)
    assert float(area(net)) == pytest.approx(approx, rel=1e-12)


def test_apply_matrix_examples(nets):
    t = nets["torus"]
    assert apply_matrix(t, ((1, 0), (0, 1))) == t
    assert area(apply_matrix(t, ((2, 0), (0, Fraction(1, 2))))) == 1
    sheared = apply_matrix(t, ((1, 1), (0, 1)))
    assert [s.corners for s in vertex_cycles(sheared)] == [s.corners for s in vertex_cycles(t)]
    with pytest.raises(SingularMatrix):
        apply_matrix(t, ((1, 2), (2, 4)))
    with pytest.raises(OrientationReversing):
        apply_matrix(t, ((0, 1), (1, 0)))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_apply_matrix_composition(name, nets, rng):
    net = nets[name]
    M1, M2 = random_sl2z(rng, 3), random_sl2z(rng, 3)
    M21 = tuple(tuple(sum(M2[i][k] * M1[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    assert apply_matrix(apply_matrix(net, M1), M2) == apply_matrix(net, M21)
    assert area(apply_matrix(net, M1)) == area(net)


def test_convex_pattern(nets):
    assert is_convex_pattern(nets["torus"])
    assert is_convex_pattern(nets["octagon"])
    assert not is_convex_pattern(nets["lshape"])


def test_face_to_face(nets):
    assert is_face_to_face(nets["torus"])
    assert is_face_to_face(nets["octagon"])
    assert is_face_to_face(nets["staircase"])
    assert not is_face_to_face(nets["blocked_l"])
    with pytest.raises(MultiPolygonUnsupported):
        is_face_to_face(nets["l3"])


def test_subdivide_keeps_surface(nets):
    net = nets["octagon"]
    cut = subdivide(net, 0, 0, 4)
    assert len(cut.polygons) == 2
    assert area(cut) == area(net)
    assert stratum(cut) == stratum(net)
    with pytest.raises(BadChord):
        subdivide(net, 0, 0, 1)
    with pytest.raises(BadChord):
        subdivide(nets["lshape"], 0, 2, 6)  # passes outside around the reflex corner


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_triangulate(name, nets):
    net = nets[name]
    tri = triangulate(net)
    assert all(len(p) == 3 for p in tri.polygons)
    assert area(tri) == area(net)
    assert stratum(tri) == stratum(net)
