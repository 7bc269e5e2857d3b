import math
from fractions import Fraction

import pytest

from conftest import CATALOG_NAMES, random_sl2z, random_transitive_pair
from tsurf import catalog
from tsurf.catalog import QSQRT2
from tsurf.errors import NotComplete
from tsurf.exactnum import QQ
from tsurf.flow import (
    Direction,
    Escape,
    Inconclusive,
    LengthSq,
    SaddleConnection,
    cylinder_decomposition,
    core_curve_class,
    enumerate_directions,
    is_purely_periodic_direction,
    outgoing_germs,
    saddle_connection_holonomies,
    sort_directions,
    trace_separatrix,
)
from tsurf.surface import Vec2, apply_matrix, area, cross, dot, extend_field, same_direction
from tsurf.topology import holonomy, holonomy_map, subgroup_rank_index

A = QSQRT2.gen()


def _decomposition(net, d, cutoff=60):
    dec = cylinder_decomposition(net, d, cutoff)
    assert dec.complete, f"{d} did not close"
    return dec


def _trace_consistent(net, sc: SaddleConnection, u: Vec2):
    total = Vec2(net.field.zero(), net.field.zero())
    segs = sc.segments
    for s in segs:
        assert same_direction(s.end - s.start, u)
        total = total + (s.end - s.start)
    assert total == sc.holonomy
    for s, t in zip(segs, segs[1:]):
        # some edge of s.polygon carries s.end onto t.start
        ok = False
        poly = net.polygons[s.polygon]
        for e in range(len(poly)):
            q, _ = net.pairing[(s.polygon, e)]
            if q == t.polygon and s.end + net.translation(s.polygon, e) == t.start:
                a, b = net.edge(s.polygon, e)
                if cross(b - a, s.end - a).is_zero():
                    ok = True
        assert ok


# -- tracing ----------------------------------------------------------------


def test_trace_torus(nets):
    t = nets["torus"]
    for v, hol in (((1, 0), (1, 0)), ((1, 1), (1, 1))):
        u = Vec2.of(t.field, *v)
        (germ,) = outgoing_germs(t, u)
        sc = trace_separatrix(t, germ, v, 10)
        assert isinstance(sc, SaddleConnection)
        assert sc.holonomy == Vec2.of(t.field, *hol)


def test_trace_irrational_escapes(nets):
    t = nets["torus"]
    d = Direction.of(Vec2(QSQRT2.one(), A))
    (germ,) = outgoing_germs(extend_field(t, QSQRT2), d.v)
    r = trace_separatrix(t, germ, d, 100)
    assert isinstance(r, Escape)
    assert r.traced * r.traced * d.v.norm2() >= QSQRT2.coerce(100 * 100)


def test_germ_count_matches_cone_angle(nets):
    for name in CATALOG_NAMES:
        net = nets[name]
        for v in ((1, 0), (0, 1), (1, 1), (2, -1)):
            germs = outgoing_germs(net, Vec2.of(net.field, *v))
            turns = sum(s.turns for s in net.vertex_cycles())
            assert len(germs) == turns


@pytest.mark.parametrize("name", ["l3", "octagon", "strange", "golden_l"])
def test_trace_consistency(name, nets):
    net = nets[name]
    for d in enumerate_directions(net, 2):
        dec = cylinder_decomposition(net, d, 20)
        for sc in dec.saddle_connections:
            _trace_consistent(net, sc, d.v)


# -- decompositions -----------------------------------------------------------


def test_torus_decompositions(nets):
    t = nets["torus"]
    for v in ((1, 0), (0, 1), (1, 1), (2, 1)):
        dec = _decomposition(t, v)
        (c,) = dec.cylinders
        assert c.width * c.height == 1
        assert dec.commensurable and is_purely_periodic_direction(dec)
    (c,) = _decomposition(t, (1, 0)).cylinders
    assert (c.width, c.height) == (1, 1)


def test_l_origami_horizontal(nets):
    dec = _decomposition(nets["l3"], (1, 0))
    assert sorted((c.width.to_fraction(), c.height.to_fraction()) for c in dec.cylinders) == [(1, 1), (2, 1)]
    assert is_purely_periodic_direction(dec)


def test_octagon_horizontal(nets):
    o = nets["octagon"]
    dec = _decomposition(o, (1, 0))
    ws = sorted((c.width for c in dec.cylinders), key=float)
    assert len(ws) == 2
    assert ws == [1 + A, 2 + A]
    assert not dec.commensurable
    assert not is_purely_periodic_direction(dec)
    # float oracle: the horizontal cylinders of the octagon by slicing at vertex heights
    s = math.sqrt(2) / 2
    assert sorted(float(c.height) for c in dec.cylinders) == pytest.approx(sorted([s, 1.0]))


def test_not_complete_raises(nets):
    dec = cylinder_decomposition(nets["strange"], (1, 0), 40)
    assert isinstance(dec, Inconclusive)
    with pytest.raises(NotComplete):
        is_purely_periodic_direction(dec)


def test_strange_surface_directions(nets):
    s = nets["strange"]
    v = _decomposition(s, (0, 1))
    d = _decomposition(s, (2, 1))
    assert len(v.cylinders) + len(d.cylinders) == 3
    assert v.commensurable and d.commensurable
    h = cylinder_decomposition(s, (1, 0), 60)
    assert isinstance(h, Inconclusive) and h.escaped > 0
    classes = [c.core_class for c in v.cylinders + d.cylinders]
    assert subgroup_rank_index(classes)[0] < 4


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_area_sum_and_core_holonomy(name, nets):
    net = nets[name]
    hm = holonomy_map(net)
    for d in enumerate_directions(net, 2):
        dec = cylinder_decomposition(net, d, 40)
        for c in dec.cylinders:
            assert c.width.sign() > 0 and c.height.sign() > 0
            hol = holonomy(core_curve_class(c), hm)
            assert hol == c.core_holonomy
            assert same_direction(hol, d.v) or same_direction(-hol, d.v)
            assert hol == d.v * c.width or hol == -(d.v * c.width)
        if dec.complete:
            total = net.field.zero()
            for c in dec.cylinders:
                total = total + c.width * c.height
            assert total == area(net)


def test_reversal_symmetry(nets):
    for name in ("l3", "octagon"):
        net = nets[name]
        for v in ((1, 0), (1, 1), (0, 1)):
            a = _decomposition(net, v)
            b = _decomposition(net, Vec2.of(net.field, -v[0], -v[1]))
            key = lambda dec: sorted((str(c.width), str(c.height)) for c in dec.cylinders)
            assert key(a) == key(b)


@pytest.mark.parametrize("name", ["l3", "lshape", "staircase", "blocked_l", "octagon", "golden_l"])
def test_matrix_equivariance(name, nets, rng):
    net = nets[name]
    for _ in range(6):
        M = random_sl2z(rng, 3)
        image = apply_matrix(net, M)
        for v in ((1, 0), (0, 1)):
            u = Vec2.of(net.field, *v)
            Mu = Vec2(u.x * M[0][0] + u.y * M[0][1], u.x * M[1][0] + u.y * M[1][1])
            a = _decomposition(net, v, 200)
            b = _decomposition(image, Mu, 200)
            # core curves are oriented along the normalized direction, which may reverse M.u
            flip = 1 if dot(Direction.of(Mu).v, Mu).sign() > 0 else -1
            assert sorted(c.core_class.coeffs for c in a.cylinders) == sorted(
                tuple(flip * x for x in c.core_class.coeffs) for c in b.cylinders
            )
            assert sorted(str(c.area) for c in a.cylinders) == sorted(str(c.area) for c in b.cylinders)


def test_l_origami_core_classes_rank(nets):
    l3 = nets["l3"]
    classes = [c.core_class for v in ((1, 0), (0, 1)) for c in _decomposition(l3, v).cylinders]
    assert len(classes) == 4
    assert subgroup_rank_index(classes)[0] == 4


def test_torus_core_classes(nets):
    t = nets["torus"]
    hm = holonomy_map(t)
    (h,) = _decomposition(t, (1, 0)).cylinders
    (v,) = _decomposition(t, (0, 1)).cylinders
    assert holonomy(h.core_class, hm) == Vec2.of(QQ, 1, 0)
    assert holonomy(v.core_class, hm) == Vec2.of(QQ, 0, 1)
    assert subgroup_rank_index([h.core_class, v.core_class]) == (2, 1)


# -- direction enumeration ----------------------------------------------------


def _primitive_directions(bound_sq):
    out = set()
    r = math.isqrt(bound_sq)
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            if (x, y) != (0, 0) and x * x + y * y <= bound_sq and math.gcd(x, y) == 1:
                if x > 0 or (x == 0 and y > 0):
                    out.add((x, y))
    return out


def _as_pairs(ds):
    out = set()
    for d in ds:
        x, y = d.v.x.to_fraction(), d.v.y.to_fraction()
        out.add((int(x), int(y)))
    return out


def test_torus_directions(nets):
    t = nets["torus"]
    assert _as_pairs(enumerate_directions(t, LengthSq(2))) == {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert _as_pairs(enumerate_directions(t, A)) == {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert _as_pairs(enumerate_directions(t, 1)) == {(1, 0), (0, 1)}
    assert enumerate_directions(t, Fraction(1, 2)) == []


@pytest.mark.parametrize("bound_sq", [1, 5, 10, 17])
def test_origami_directions_brute_force(bound_sq, rng):
    # every integer point of an origami is a vertex, so the directions are
    # exactly the primitive integer vectors of length <= bound
    for _ in range(3):
        h, v = random_transitive_pair(rng, rng.randint(1, 5))
        net = catalog.square_tiled(h, v)
        assert _as_pairs(enumerate_directions(net, LengthSq(bound_sq))) == _primitive_directions(bound_sq)


def test_directions_sorted(nets):
    ds = enumerate_directions(nets["octagon"], 3)
    assert ds == sort_directions(reversed(ds))
    assert ds[-1] == Direction.of(Vec2.of(QSQRT2, 0, 1))
    slopes = [float(d.v.y / d.v.x) for d in ds[:-1]]
    assert slopes == sorted(slopes)


def test_octagon_directions_symmetric(nets):
    o = nets["octagon"]
    h = A / 2
    for M in (((h, -h), (h, h)), ((1, 0), (0, -1))):
        image = apply_matrix(o, M) if M[1][1] != -1 else None
        ds = enumerate_directions(o, 3)
        if image is not None:
            assert set(enumerate_directions(image, 3)) == set(ds)
        rotated = {Direction.of(Vec2(d.v.x * M[0][0] + d.v.y * M[0][1], d.v.x * M[1][0] + d.v.y * M[1][1])) for d in ds}
        assert rotated == set(ds)


def test_octagon_directions_confirmed_by_tracing(nets):
    o = nets["octagon"]
    bound = 3
    for d in enumerate_directions(o, bound):
        best = None
        for germ in outgoing_germs(o, d.v):
            r = trace_separatrix(o, germ, d, bound)
            if isinstance(r, SaddleConnection):
                n2 = r.holonomy.norm2()
                best = n2 if best is None or n2 < best else best
        assert best is not None and best <= 9


def test_holonomy_counts_grow_with_bound(nets):
    o = nets["octagon"]
    counts = [len(saddle_connection_holonomies(o, b)) for b in (1, 2, 3)]
    assert counts == sorted(counts)
    assert all(h.norm2() <= 4 for _, h in saddle_connection_holonomies(o, 2))
