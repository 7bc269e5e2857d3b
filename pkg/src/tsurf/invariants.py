"""The wedge algebra over Q, the J-invariant and the simplicity test.

A coordinate field of degree d makes R^2 (restricted to the net) a 2d-dim
Q-space with basis ``a^i e_1`` (index ``i``) and ``a^i e_2`` (index ``d + i``).
Bivectors are antisymmetric rational matrices on that basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import FieldMismatch, JZero, PhiMismatch, ZeroInput
from .exactnum import FieldElement, FieldSpec, rref
from .surface import PolygonNet, Vec2, area


@dataclass(frozen=True)
class QBasis:
    field: FieldSpec

    @property
    def dim(self) -> int:
        return 2 * self.field.degree

    def coords(self, v: Vec2) -> tuple[Fraction, ...]:
        if v.x.field != self.field or v.y.field != self.field:
            raise FieldMismatch("vector is not over this basis' field")
        return tuple(v.x.coords) + tuple(v.y.coords)

    def vector(self, coords: Sequence) -> Vec2:
        d = self.field.degree
        return Vec2(self.field.element(coords[:d]), self.field.element(coords[d:]))

    def label(self, i: int) -> str:
        d = self.field.degree
        axis, k = divmod(i, d)
        e = "e1" if axis == 0 else "e2"
        if k == 0:
            return e
        return f"a*{e}" if k == 1 else f"a^{k}*{e}"


class Bivector:
    """Element of the second exterior power over Q, stored sparsely on pairs i < j."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: QBasis, terms: dict | None = None):
        self.basis = basis
        self.terms = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls, field: FieldSpec) -> Bivector:
        return cls(QBasis(field))

    def _check(self, o: Bivector):
        if o.basis != self.basis:
            raise FieldMismatch("bivectors over different bases")

    def __add__(self, o: Bivector) -> Bivector:
        self._check(o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, 0) + c
        return Bivector(self.basis, t)

    def __neg__(self) -> Bivector:
        return Bivector(self.basis, {k: -c for k, c in self.terms.items()})

    def __sub__(self, o: Bivector) -> Bivector:
        return self + (-o)

    def __mul__(self, q) -> Bivector:
        if isinstance(q, FieldElement):
            if not q.is_rational():
                raise TypeError("only rational scalars act on bivectors over Q")
            q = q.to_fraction()
        q = Fraction(q)
        return Bivector(self.basis, {k: q * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, Bivector) and o.basis == self.basis and o.terms == self.terms

    def __hash__(self):
        return hash((self.basis, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            return self.terms.get((i, j), Fraction(0))
        return -self.terms.get((j, i), Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        n = self.basis.dim
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def sparse(self) -> list[tuple[tuple[int, int], Fraction]]:
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.sparse():
            parts.append(f"{c}*({self.basis.label(i)})^({self.basis.label(j)})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Bivector({self})"


def wedge(u: Vec2, v: Vec2) -> Bivector:
    B = QBasis(u.x.field)
    a, b = B.coords(u), B.coords(v)
    n = B.dim
    terms = {}
    for i in range(n):
        if not a[i] and not b[i]:
            continue
        for j in range(i + 1, n):
            c = a[i] * b[j] - a[j] * b[i]
            if c:
                terms[(i, j)] = c
    return Bivector(B, terms)


def j_polygon(poly: Sequence[Vec2]) -> Bivector:
    """Cyclic wedge sum ``v1^v2 + v2^v3 + ... + vn^v1``."""
    if not poly:
        raise ValueError("empty polygon")
    total = Bivector.zero(poly[0].x.field)
    n = len(poly)
    for k in range(n):
        total = total + wedge(poly[k], poly[(k + 1) % n])
    return total


def phi(b: Bivector) -> FieldElement:
    """Q-linear extension of det: ``(a^p e1) ^ (a^q e2) -> a^(p+q)``."""
    K = b.basis.field
    d = K.degree
    g = K.gen() if d > 1 else K.one()
    total = K.zero()
    for (i, j), c in b.terms.items():
        ai, pi = divmod(i, d)
        aj, pj = divmod(j, d)
        if ai == aj:
            continue
        s = 1 if ai == 0 else -1
        total = total + g ** (pi + pj) * (s * c)
    return total


def j_surface(net: PolygonNet) -> Bivector:
    total = Bivector.zero(net.field)
    for poly in net.polygons:
        total = total + j_polygon(poly)
    if total.is_zero():
        raise JZero("J vanishes on a surface of positive area")
    if phi(total) != 2 * area(net):
        raise PhiMismatch("phi(J) differs from twice the area")
    return total


@dataclass(frozen=True, eq=False)
class SimpleWitness:
    v: Vec2
    w: Vec2


@dataclass(frozen=True)
class NotSimple:
    """Certificate: a nonzero Pluecker coordinate of ``b ^ b``."""

    indices: tuple[int, int, int, int]
    value: Fraction


def plucker_violation(b: Bivector):
    n = b.basis.dim
    M = b.entry
    for i, j, k, l in itertools.combinations(range(n), 4):
        val = M(i, j) * M(k, l) - M(i, k) * M(j, l) + M(i, l) * M(j, k)
        if val:
            return (i, j, k, l), val
    return None


def is_j_simple(b: Bivector) -> SimpleWitness | NotSimple:
    if b.is_zero():
        raise ZeroInput("the zero bivector")
    bad = plucker_violation(b)
    if bad is not None:
        return NotSimple(*bad)
    M = b.matrix()
    i = min(k for k, _ in b.terms)  # first nonzero row
    j = next(c for c in range(b.basis.dim) if M[i][c])
    v = b.basis.vector([-x for x in M[j]])
    w = b.basis.vector([x / M[i][j] for x in M[i]])
    if wedge(v, w) != b:
        raise AssertionError("rank-2 factorisation failed")
    return SimpleWitness(v, w)


def bivector_rank(b: Bivector) -> int:
    _, piv = rref([list(r) for r in b.matrix()])
    return len(piv)
