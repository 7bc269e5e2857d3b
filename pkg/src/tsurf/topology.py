"""Cellular homology of a net and the holonomy morphism.

Cells: glued vertices (vertex cycles), glued edges (edge pairs, oriented like
their representative half-edge), faces (polygons). H_1 is computed with a
Smith normal form that keeps its unimodular transforms, so every 1-cycle can
be projected onto the fixed basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import TorsionFound
from .surface import PolygonNet, Vec2


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(D, U, V, Uinv, Vinv)`` with ``U A V = D`` diagonal, d_1 | d_2 | ...

    All transforms are unimodular integer matrices (lists of lists).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U, Uinv, V, Vinv = _eye(m), _eye(m), _eye(n), _eye(n)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]
            for r in Uinv:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i != j:
            for r in D:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
            for r in Uinv:
                r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        if q:
            for r in D:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]
            Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            piv = D[t][t]
            for i in range(t + 1, m):
                add_row(i, t, -(D[i][t] // piv))
            for j in range(t + 1, n):
                add_col(j, t, -(D[t][j] // piv))
            small = None
            for i in range(t + 1, m):
                if D[i][t] and (small is None or abs(D[i][t]) < abs(small[2])):
                    small = ("r", i, D[i][t])
            for j in range(t + 1, n):
                if D[t][j] and (small is None or abs(D[t][j]) < abs(small[2])):
                    small = ("c", j, D[t][j])
            if small is not None:
                if small[0] == "r":
                    swap_rows(t, small[1])
                else:
                    swap_cols(t, small[1])
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
            for r in Uinv:
                r[t] = -r[t]
        t += 1
    return D, U, V, Uinv, Vinv


def _matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


@dataclass(frozen=True)
class ChainComplex:
    V: int
    E: int
    F: int
    d1: tuple[tuple[int, ...], ...]  # V x E
    d2: tuple[tuple[int, ...], ...]  # E x F
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]  # (representative, partner)

    @property
    def euler_characteristic(self) -> int:
        return self.V - self.E + self.F

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2


@dataclass(frozen=True)
class HomologyClass:
    coeffs: tuple[int, ...]

    def __add__(self, o: HomologyClass) -> HomologyClass:
        return HomologyClass(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def __sub__(self, o: HomologyClass) -> HomologyClass:
        return HomologyClass(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __neg__(self) -> HomologyClass:
        return HomologyClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> HomologyClass:
        return HomologyClass(tuple(k * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class HolonomyMap:
    vectors: tuple[Vec2, ...]


def cw_complex(net: PolygonNet) -> ChainComplex:
    if "cw" in net._cache:
        return net._cache["cw"]
    cycles = net.vertex_cycles()
    pairs = net.edge_pairs()
    gid = {}
    for g, (h, k) in enumerate(pairs):
        gid[h] = (g, 1)
        gid[k] = (g, -1)
    V, E, F = len(cycles), len(pairs), len(net.polygons)
    d1 = [[0] * E for _ in range(V)]
    for g, ((p, e), _) in enumerate(pairs):
        start = net.corner_vertex(p, e)
        end = net.corner_vertex(p, e + 1)
        d1[end][g] += 1
        d1[start][g] -= 1
    d2 = [[0] * F for _ in range(E)]
    for p, poly in enumerate(net.polygons):
        for e in range(len(poly)):
            g, s = gid[(p, e)]
            d2[g][p] += s
    cx = ChainComplex(V, E, F, tuple(map(tuple, d1)), tuple(map(tuple, d2)), tuple(pairs))
    net._cache["cw"] = cx
    return cx


class Homology:
    """H_1(S, Z) with a fixed basis and a projection from 1-cycles."""

    def __init__(self, cx: ChainComplex):
        self.cx = cx
        E = cx.E
        if cx.V:
            S1, _, V1, _, V1inv = smith_normal_form(cx.d1)
            r1 = sum(1 for i in range(min(cx.V, E)) if S1[i][i])
        else:
            V1, V1inv, r1 = _eye(E), _eye(E), 0
        k = E - r1
        # boundaries expressed in kernel coordinates
        coords = [_matvec(V1inv, [cx.d2[g][f] for g in range(E)]) for f in range(cx.F)]
        if any(any(c[:r1]) for c in coords):
            raise TorsionFound("face boundary is not a cycle; gluing is inconsistent")
        B = [[coords[f][r1 + i] for f in range(cx.F)] for i in range(k)]
        if k and cx.F:
            S2, U2, _, U2inv, _ = smith_normal_form(B)
            divisors = [S2[i][i] for i in range(min(k, cx.F)) if S2[i][i]]
        else:
            U2, U2inv, divisors = _eye(k), _eye(k), []
        torsion = [d for d in divisors if d != 1]
        if torsion:
            raise TorsionFound(f"torsion {torsion} in H_1; the net is not a closed orientable surface")
        r2 = len(divisors)
        self.rank = k - r2
        self._r1, self._r2 = r1, r2
        self._V1inv, self._U2 = V1inv, U2
        K = [[V1[g][r1 + j] for j in range(k)] for g in range(E)]
        self.basis_cycles = tuple(
            tuple(sum(K[g][i] * U2inv[i][j] for i in range(k)) for g in range(E)) for j in range(r2, k)
        )

    def is_cycle(self, z: Sequence[int]) -> bool:
        return not any(_matvec(self.cx.d1, z))

    def project(self, z: Sequence[int]) -> HomologyClass:
        if not self.is_cycle(z):
            raise ValueError("chain is not a cycle")
        c = _matvec(self._V1inv, z)[self._r1 :]
        h = _matvec(self._U2, c)
        return HomologyClass(tuple(h[self._r2 :]))

    def basis(self) -> list[HomologyClass]:
        return [HomologyClass(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank)]


def homology_basis(cx: ChainComplex) -> Homology:
    return Homology(cx)


def net_homology(net: PolygonNet) -> Homology:
    if "homology" not in net._cache:
        net._cache["homology"] = Homology(cw_complex(net))
    return net._cache["homology"]


def chain_holonomy(net: PolygonNet, z: Sequence[int]) -> Vec2:
    cx = cw_complex(net)
    total = Vec2(net.field.zero(), net.field.zero())
    for g, c in enumerate(z):
        if c:
            total = total + net.edge_vector(*cx.edges[g][0]) * c
    return total


def holonomy_map(net: PolygonNet) -> HolonomyMap:
    if "holmap" not in net._cache:
        H = net_homology(net)
        net._cache["holmap"] = HolonomyMap(tuple(chain_holonomy(net, z) for z in H.basis_cycles))
    return net._cache["holmap"]


def holonomy(cls: HomologyClass, hm: HolonomyMap) -> Vec2:
    if len(cls.coeffs) != len(hm.vectors):
        raise ValueError("class and holonomy map have different ranks")
    if not hm.vectors:
        raise ValueError("empty holonomy map")
    fld = hm.vectors[0].x.field
    total = Vec2(fld.zero(), fld.zero())
    for c, v in zip(cls.coeffs, hm.vectors):
        if c:
            total = total + v * c
    return total


def subgroup_rank_index(classes: Sequence, dim: int | None = None) -> tuple[int, float | int]:
    """Rank of the subgroup generated by ``classes`` and its index in Z^dim (``math.inf`` if infinite)."""
    rows = [list(c.coeffs) if isinstance(c, HomologyClass) else list(c) for c in classes]
    if dim is None:
        if not rows:
            raise ValueError("dimension unknown for an empty list")
        dim = len(rows[0])
    if not rows:
        return 0, (1 if dim == 0 else math.inf)
    D = smith_normal_form(rows)[0]
    divisors = [D[i][i] for i in range(min(len(rows), dim)) if D[i][i]]
    rank = len(divisors)
    if rank < dim:
        return rank, math.inf
    return rank, math.prod(divisors)
