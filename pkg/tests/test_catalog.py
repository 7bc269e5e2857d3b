import json
from pathlib import Path

import pytest

from conftest import CATALOG_NAMES, random_transitive_pair
from tsurf import catalog
from tsurf.catalog import CATALOG, QSQRT2, QSQRT5
from tsurf.covering import classify
from tsurf.errors import AlphaRational, BadParameters, NotTransitive
from tsurf.flow import cylinder_decomposition
from tsurf.invariants import j_surface, phi
from tsurf.surface import area, is_convex_pattern, is_face_to_face, parse_net, serialize_net, stratum
from tsurf.topology import net_homology, subgroup_rank_index

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_expected_facts(name):
    e = CATALOG[name]
    net = e.builder()
    assert parse_net(serialize_net(net)) == net
    facts = e.expected
    st = stratum(net)
    if "stratum" in facts:
        assert st.multiplicities == facts["stratum"]
    if "genus" in facts:
        assert st.genus == facts["genus"]
    if "area" in facts:
        assert area(net) == facts["area"]
    if "convex" in facts:
        assert is_convex_pattern(net) == facts["convex"]
    if "face_to_face" in facts:
        assert is_face_to_face(net) == facts["face_to_face"]
    if "square_tiled" in facts:
        n = facts["square_tiled"]
        assert len(net.polygons) == n
        assert classify(net, 2, 50).covering.degree == n


def test_square_tiled_examples(nets):
    t = catalog.square_tiled([0], [0])
    assert t == nets["torus"]
    l3 = catalog.square_tiled(
        catalog.perm_from_cycles("(1 2)", 3), catalog.perm_from_cycles("(1 3)", 3)
    )
    assert stratum(l3).multiplicities == (2,)
    # a non-reduced origami: hol(H_1) is 2Z x Z, but the cover is still of degree 2 over Z^2
    assert classify(catalog.square_tiled([1, 0], [0, 1]), 2, 50).covering.degree == 2
    with pytest.raises(NotTransitive):
        catalog.square_tiled([0, 1], [0, 1])


def test_random_square_tiled_cover_degree(rng):
    for _ in range(8):
        n = rng.randint(2, 6)
        h, v = random_transitive_pair(rng, n)
        assert classify(catalog.square_tiled(h, v), 3, 50).covering.degree == n


def test_octagon_facts(nets):
    o = nets["octagon"]
    assert area(o) == 2 + 2 * QSQRT2.gen()
    assert is_convex_pattern(o)
    assert stratum(o).multiplicities == (2,)


def test_l_shaped():
    for a, b in ((2, 2), (3, 2), (QSQRT2.gen() + 1, 2)):
        net = catalog.l_shaped(a, b)
        assert area(net) == a * b - (a - 1) * (b - 1)
        assert not is_convex_pattern(net)
        assert stratum(net).multiplicities == (2,)
    g = (1 + QSQRT5.gen()) / 2
    assert area(catalog.l_shaped(g, g)) == 2 * g - 1
    with pytest.raises(BadParameters):
        catalog.l_shaped(1, 2)


def test_strange_surface_facts(nets):
    s = nets["strange"]
    assert stratum(s).genus == 2
    assert net_homology(s).rank == 4
    decs = [cylinder_decomposition(s, d, 60) for d in ((0, 1), (2, 1))]
    assert all(d.complete for d in decs)
    cyls = [c for d in decs for c in d.cylinders]
    assert len(cyls) == 3
    assert subgroup_rank_index([c.core_class for c in cyls])[0] < 4
    assert not cylinder_decomposition(s, (1, 0), 60).complete


def test_strange_surface_golden(nets):
    assert serialize_net(nets["strange"]) == (GOLDEN / "strange.net").read_text()


def test_strange_surface_other_alpha():
    K = QSQRT2
    s = catalog.strange_surface((K.gen() - 1) / 2)
    assert stratum(s).genus == 2
    with pytest.raises(AlphaRational):
        catalog.strange_surface(K.coerce(1) / 2)


@pytest.mark.parametrize("name", ["torus", "l3", "octagon", "strange"])
def test_classify_golden(name, nets):
    rep = classify(nets[name], 2, 60, threads=1)
    assert rep.to_json() == (GOLDEN / f"classify_{name}.json").read_text(encoding="utf-8")


def test_get_errors():
    with pytest.raises(BadParameters):
        catalog.get("nonesuch")
    with pytest.raises(BadParameters):
        catalog.get("origami:1,2")
    assert len(catalog.get("origami:2,1:1,2").polygons) == 2


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_j_identity(name, nets):
    assert phi(j_surface(nets[name])) == 2 * area(nets[name])
