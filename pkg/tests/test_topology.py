import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from conftest import CATALOG_NAMES, random_transitive_pair
from tsurf import catalog
from tsurf.surface import stratum
from tsurf.topology import (
    HomologyClass,
    chain_holonomy,
    cw_complex,
    holonomy,
    holonomy_map,
    net_homology,
    smith_normal_form,
    subgroup_rank_index,
)


def _mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_cw_examples(nets):
    t = cw_complex(nets["torus"])
    assert (t.V, t.E, t.F, t.euler_characteristic) == (1, 2, 1, 0)
    l3 = cw_complex(nets["l3"])
    assert (l3.F, l3.euler_characteristic, l3.genus) == (3, -2, 2)
    o = cw_complex(nets["octagon"])
    assert (o.V, o.E, o.F, o.euler_characteristic) == (1, 4, 1, -2)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_boundary_squares_to_zero(name, nets):
    cx = cw_complex(nets[name])
    assert all(not any(row) for row in _mul(cx.d1, cx.d2))
    assert cx.euler_characteristic == 2 - 2 * stratum(nets[name]).genus


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_homology_rank_and_faces(name, nets):
    net = nets[name]
    H = net_homology(net)
    assert H.rank == 2 * stratum(net).genus
    cx = cw_complex(net)
    for f in range(cx.F):
        z = [cx.d2[g][f] for g in range(cx.E)]
        assert H.project(z).is_zero()
        assert chain_holonomy(net, z).is_zero()


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_basis_cycles_project_to_basis(name, nets):
    H = net_homology(nets[name])
    assert [H.project(z) for z in H.basis_cycles] == H.basis()


def test_random_origami_homology(rng):
    for _ in range(20):
        n = rng.randint(1, 7)
        h, v = random_transitive_pair(rng, n)
        net = catalog.square_tiled(h, v)
        assert net_homology(net).rank == 2 * stratum(net).genus


def test_torus_holonomy(nets):
    hm = holonomy_map(nets["torus"])
    a, b = HomologyClass((1, 0)), HomologyClass((0, 1))
    assert holonomy(HomologyClass((0, 0)), hm).is_zero()
    hols = {(holonomy(a, hm).x.to_fraction(), holonomy(a, hm).y.to_fraction()),
            (holonomy(b, hm).x.to_fraction(), holonomy(b, hm).y.to_fraction())}
    assert hols == {(1, 0), (0, 1)}
    s = holonomy(a + b, hm)
    assert (s.x, s.y) == (1, 1)


@pytest.mark.parametrize("name", ["l3", "octagon", "strange"])
def test_holonomy_linear(name, nets, rng):
    hm = holonomy_map(nets[name])
    r = len(hm.vectors)
    for _ in range(10):
        a = HomologyClass(tuple(rng.randint(-3, 3) for _ in range(r)))
        b = HomologyClass(tuple(rng.randint(-3, 3) for _ in range(r)))
        assert holonomy(a + b, hm) == holonomy(a, hm) + holonomy(b, hm)
        assert holonomy(3 * a, hm) == holonomy(a, hm) * 3


def test_rank_index_examples():
    assert subgroup_rank_index([(1, 0), (0, 1)]) == (2, 1)
    assert subgroup_rank_index([(2, 0), (0, 1)]) == (2, 2)
    assert subgroup_rank_index([(1, 0)]) == (1, math.inf)
    assert subgroup_rank_index([], dim=2) == (0, math.inf)


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@given(matrices)
def test_snf_against_sympy(A):
    D, U, V, Uinv, Vinv = smith_normal_form(A)
    assert _mul(_mul(U, A), V) == D
    n, m = len(A), len(A[0])
    ours = [abs(D[i][i]) for i in range(min(n, m)) if D[i][i]]
    S = sympy_snf(Matrix(A), domain=ZZ)
    theirs = [abs(int(S[i, i])) for i in range(min(n, m)) if S[i, i]]
    assert sorted(ours) == sorted(theirs)
    for i in range(len(ours) - 1):
        assert ours[i + 1] % ours[i] == 0


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_index_is_abs_det(rows):
    det = int(Matrix(rows).det())
    rank, index = subgroup_rank_index(rows)
    if det:
        assert (rank, index) == (3, abs(det))
    else:
        assert rank < 3 and index == math.inf


@given(
    st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4),
    st.integers(0, 3),
    st.integers(0, 3),
    st.integers(-3, 3),
)
def test_rank_index_invariant_under_row_ops(rows, i, j, k):
    i %= len(rows)
    j %= len(rows)
    before = subgroup_rank_index(rows)
    if i != j:
        rows = [list(r) for r in rows]
        rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
    assert subgroup_rank_index(rows) == before
