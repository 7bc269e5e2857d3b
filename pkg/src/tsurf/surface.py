"""Polygon nets presenting translation surfaces.

A net is a list of counterclockwise polygons (each in its own chart) with an
involution pairing boundary edges. Edge ``e`` of polygon ``p`` runs from
vertex ``e`` to vertex ``e + 1``. Two paired edges carry opposite vectors and
are glued by the translation taking one onto the other.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AngleNotMultipleOf2Pi,
    BadChord,
    BadField,
    BadMark,
    FieldMismatch,
    MultiPolygonUnsupported,
    NetSyntaxError,
    NotConnected,
    NotSimple,
    OrientationReversing,
    PairingMismatch,
    SingularMatrix,
)
from .exactnum import FieldElement, FieldSpec, field_make, parse_rational

Corner = tuple[int, int]
HalfEdge = tuple[int, int]


class Vec2:
    """A plane vector with coordinates in one field."""

    __slots__ = ("x", "y")

    def __init__(self, x: FieldElement, y: FieldElement):
        self.x = x
        self.y = y

    @classmethod
    def of(cls, field: FieldSpec, x, y) -> Vec2:
        return cls(field.coerce(x), field.coerce(y))

    def __add__(self, o: Vec2) -> Vec2:
        return Vec2(self.x + o.x, self.y + o.y)

    def __sub__(self, o: Vec2) -> Vec2:
        return Vec2(self.x - o.x, self.y - o.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __mul__(self, s) -> Vec2:
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> Vec2:
        return Vec2(self.x / s, self.y / s)

    def __eq__(self, o):
        if not isinstance(o, Vec2):
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __iter__(self):
        yield self.x
        yield self.y

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def rot90(self) -> Vec2:
        return Vec2(-self.y, self.x)

    def norm2(self) -> FieldElement:
        return self.x * self.x + self.y * self.y

    def __repr__(self):
        return f"Vec2({self.x}, {self.y})"


def cross(u: Vec2, v: Vec2) -> FieldElement:
    return u.x * v.y - u.y * v.x


def dot(u: Vec2, v: Vec2) -> FieldElement:
    return u.x * v.x + u.y * v.y


def same_direction(u: Vec2, v: Vec2) -> bool:
    return cross(u, v).is_zero() and dot(u, v).sign() > 0


def _half(a: Vec2, x: Vec2) -> int:
    c = cross(a, x).sign()
    if c > 0 or (c == 0 and dot(a, x).sign() > 0):
        return 0
    return 1


def angle_lt(a: Vec2, x: Vec2, y: Vec2) -> bool:
    """True when the ccw angle from ``a`` to ``x`` is smaller than from ``a`` to ``y``."""
    hx, hy = _half(a, x), _half(a, y)
    if hx != hy:
        return hx < hy
    return cross(x, y).sign() > 0


def in_sector(a: Vec2, b: Vec2, x: Vec2) -> bool:
    """Whether ``x`` lies in the half-open ccw sector ``[a, b)``."""
    return angle_lt(a, x, b)


# ---------------------------------------------------------------------------
# segment predicates


def on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool:
    if not cross(b - a, p - a).is_zero():
        return False
    return dot(p - a, p - b).sign() <= 0


def segment_hits(p: Vec2, d: Vec2, a: Vec2, b: Vec2) -> list[FieldElement]:
    """Parameters ``s`` where ``p + s*d`` meets the closed segment ``[a, b]``.

    Returns [] if disjoint, [s] for a point, [s0, s1] (sorted) when collinear
    and overlapping.
    """
    e = b - a
    den = cross(d, e)
    ap = a - p
    if not den.is_zero():
        s = cross(ap, e) / den
        t = cross(ap, d) / den
        if t.sign() < 0 or (t - 1).sign() > 0:
            return []
        return [s]
    if not cross(ap, d).is_zero():
        return []
    dd = dot(d, d)
    sa = dot(ap, d) / dd
    sb = dot(b - p, d) / dd
    return sorted([sa, sb])


def shoelace2(poly: Sequence[Vec2]) -> FieldElement:
    """Twice the signed area."""
    n = len(poly)
    total = cross(poly[0], poly[1])
    for i in range(1, n):
        total = total + cross(poly[i], poly[(i + 1) % n])
    return total


def point_in_polygon(poly: Sequence[Vec2], pt: Vec2) -> int:
    """1 inside, 0 on the boundary, -1 outside (exact winding number)."""
    n = len(poly)
    wind = 0
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if on_segment(pt, a, b):
            return 0
        c = cross(b - a, pt - a).sign()
        if (a.y <= pt.y) and (pt.y < b.y) and c > 0:
            wind += 1
        elif (b.y <= pt.y) and (pt.y < a.y) and c < 0:
            wind -= 1
    return 1 if wind else -1


def open_segment_inside(poly: Sequence[Vec2], p: Vec2, q: Vec2) -> bool:
    """Whether the open segment ``(p, q)`` lies in the interior of ``poly``."""
    d = q - p
    if d.is_zero():
        return False
    n = len(poly)
    for i in range(n):
        hits = segment_hits(p, d, poly[i], poly[(i + 1) % n])
        if any(s.sign() > 0 and (s - 1).sign() < 0 for s in hits):
            return False
        if len(hits) == 2 and hits[0].sign() <= 0 and (hits[1] - 1).sign() >= 0:
            return False
    mid = Vec2((p.x + q.x) / 2, (p.y + q.y) / 2)
    return point_in_polygon(poly, mid) == 1


# ---------------------------------------------------------------------------
# nets


@dataclass(frozen=True)
class Singularity:
    """A vertex class: corners listed in counterclockwise order around the point."""

    corners: tuple[Corner, ...]
    turns: int

    @property
    def multiplicity(self) -> int:
        return self.turns - 1

    @property
    def marked(self) -> bool:
        return self.turns == 1

    @property
    def cone_angle_turns(self) -> int:
        return self.turns


@dataclass(frozen=True)
class Stratum:
    multiplicities: tuple[int, ...]
    genus: int

    def __str__(self):
        return "H(" + ", ".join(map(str, self.multiplicities)) + ")" if self.multiplicities else "H()"


class PolygonNet:
    """Validated polygon net. Treat instances as immutable."""

    def __init__(
        self,
        field: FieldSpec,
        polygons: Sequence[Sequence[Vec2]],
        pairing: dict[HalfEdge, HalfEdge],
        marked: Iterable[Corner] = (),
        names: Sequence[str] | None = None,
        check: bool = True,
    ):
        self.field = field
        self.polygons = tuple(tuple(p) for p in polygons)
        self.pairing = dict(pairing)
        self.marked = frozenset(marked)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(len(self.polygons)))
        self._cache = {}
        if check:
            self._validate()

    # -- basic structure
    def edge(self, p: int, e: int) -> tuple[Vec2, Vec2]:
        poly = self.polygons[p]
        return poly[e], poly[(e + 1) % len(poly)]

    def edge_vector(self, p: int, e: int) -> Vec2:
        a, b = self.edge(p, e)
        return b - a

    def half_edges(self) -> list[HalfEdge]:
        return [(p, e) for p, poly in enumerate(self.polygons) for e in range(len(poly))]

    def edge_pairs(self) -> list[tuple[HalfEdge, HalfEdge]]:
        """Each glued edge once, as (representative, partner) with representative < partner."""
        return [(h, self.pairing[h]) for h in self.half_edges() if h < self.pairing[h]]

    def translation(self, p: int, e: int) -> Vec2:
        """Translation taking points of edge (p, e) to the identified points of its partner."""
        q, f = self.pairing[(p, e)]
        _, b = self.edge(p, e)
        a2, _ = self.edge(q, f)
        return a2 - b

    # -- validation
    def _validate(self):
        if not self.polygons:
            raise NotSimple("net has no polygons")
        for p, poly in enumerate(self.polygons):
            for v in poly:
                if v.x.field != self.field or v.y.field != self.field:
                    raise BadField(f"polygon {self.names[p]} has a coordinate outside the net field")
            _check_simple(poly, self.names[p])
        he = set(self.half_edges())
        if set(self.pairing) != he:
            missing = sorted(he - set(self.pairing))
            extra = sorted(set(self.pairing) - he)
            raise PairingMismatch(f"pairing does not cover every edge exactly once (missing {missing}, unknown {extra})")
        for h, g in self.pairing.items():
            if g not in he:
                raise PairingMismatch(f"edge {h} paired with unknown edge {g}")
            if g == h:
                raise PairingMismatch(f"edge {h} paired with itself")
            if self.pairing[g] != h:
                raise PairingMismatch(f"pairing is not an involution at {h}")
            if not (self.edge_vector(*h) + self.edge_vector(*g)).is_zero():
                raise PairingMismatch(
                    f"edges {self._fmt_he(h)} and {self._fmt_he(g)} do not carry opposite vectors"
                )
        parent = list(range(len(self.polygons)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (p, _), (q, _) in self.pairing.items():
            parent[find(p)] = find(q)
        if len({find(i) for i in range(len(self.polygons))}) > 1:
            raise NotConnected("the glued surface is not connected")
        for p, v in self.marked:
            if not (0 <= p < len(self.polygons) and 0 <= v < len(self.polygons[p])):
                raise BadMark(f"mark refers to unknown vertex {p}.{v}")
        cycles = self.vertex_cycles()
        for p, v in self.marked:
            s = cycles[self.corner_vertex(p, v)]
            if s.turns != 1:
                raise BadMark(f"vertex {self.names[p]}.{v} has cone angle {2 * s.turns}pi and cannot be a marked point")

    def _fmt_he(self, h):
        return f"{self.names[h[0]]}.{h[1]}"

    # -- vertex cycles
    def corner_sector(self, p: int, i: int) -> tuple[Vec2, Vec2]:
        """(outgoing edge direction, reversed incoming edge direction) at corner (p, i)."""
        poly = self.polygons[p]
        n = len(poly)
        return poly[(i + 1) % n] - poly[i], poly[(i - 1) % n] - poly[i]

    def next_corner(self, p: int, i: int) -> Corner:
        """Corner met next when turning counterclockwise around the vertex."""
        n = len(self.polygons[p])
        return self.pairing[(p, (i - 1) % n)]

    def vertex_cycles(self) -> list[Singularity]:
        if "cycles" in self._cache:
            return self._cache["cycles"]
        seen = set()
        cycles = []
        index = {}
        ref = Vec2.of(self.field, 1, 0)
        for start in sorted((p, i) for p, poly in enumerate(self.polygons) for i in range(len(poly))):
            if start in seen:
                continue
            corners = []
            turns = 0
            c = start
            while True:
                seen.add(c)
                index[c] = (len(cycles), len(corners))
                corners.append(c)
                a, b = self.corner_sector(*c)
                if in_sector(a, b, ref):
                    turns += 1
                nxt = self.next_corner(*c)
                a2, _ = self.corner_sector(*nxt)
                if not same_direction(b, a2):
                    raise AngleNotMultipleOf2Pi(f"sector directions do not match at corner {c}")
                c = nxt
                if c == start:
                    break
            cycles.append(Singularity(tuple(corners), turns))
        self._cache["cycles"] = cycles
        self._cache["corner_index"] = index
        return cycles

    def corner_vertex(self, p: int, i: int) -> int:
        self.vertex_cycles()
        return self._cache["corner_index"][(p, i % len(self.polygons[p]))][0]

    def corner_position(self, p: int, i: int) -> tuple[int, int]:
        """(vertex id, position of the corner in that vertex's ccw cycle)."""
        self.vertex_cycles()
        return self._cache["corner_index"][(p, i % len(self.polygons[p]))]

    # -- equality
    def canonical(self):
        """Polygons rotated to start at their lexicographically least vertex, with re-indexed pairing."""
        shifts = []
        polys = []
        for poly in self.polygons:
            k = min(range(len(poly)), key=functools.cmp_to_key(lambda i, j: _lex_cmp(poly[i], poly[j])))
            shifts.append(k)
            polys.append(tuple((v.x.coords, v.y.coords) for v in poly[k:] + poly[:k]))

        def re(h):
            p, e = h
            return p, (e - shifts[p]) % len(self.polygons[p])

        pairing = tuple(sorted((re(h), re(g)) for h, g in self.pairing.items()))
        return self.field, tuple(polys), pairing

    def __eq__(self, other):
        if not isinstance(other, PolygonNet):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"PolygonNet({len(self.polygons)} polygons, {len(self.pairing) // 2} edge pairs)"

    def replace(self, **kw) -> PolygonNet:
        args = dict(field=self.field, polygons=self.polygons, pairing=self.pairing, marked=self.marked, names=self.names)
        args.update(kw)
        return PolygonNet(**args)


def extend_field(net: PolygonNet, field: FieldSpec) -> PolygonNet:
    """The same net with rational coordinates read in a larger field."""
    if field == net.field:
        return net
    if not net.field.is_rational:
        raise FieldMismatch("only rational nets can be moved to another field")
    polys = [[Vec2.of(field, v.x.to_fraction(), v.y.to_fraction()) for v in poly] for poly in net.polygons]
    return PolygonNet(field, polys, net.pairing, net.marked, net.names)


def _lex_cmp(u: Vec2, v: Vec2) -> int:
    c = (u.x - v.x).sign()
    if c:
        return c
    return (u.y - v.y).sign()


def _check_simple(poly: Sequence[Vec2], name: str):
    n = len(poly)
    if n < 3:
        raise NotSimple(f"polygon {name} has fewer than 3 vertices")
    if shoelace2(poly).sign() <= 0:
        raise NotSimple(f"polygon {name} is not counterclockwise (signed area <= 0)")
    for i in range(n):
        if (poly[(i + 1) % n] - poly[i]).is_zero():
            raise NotSimple(f"polygon {name} has a repeated vertex at index {i}")
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        e = b - a
        f = poly[(i + 2) % n] - b
        if cross(e, f).is_zero() and dot(e, f).sign() < 0:
            raise NotSimple(f"polygon {name} folds back on itself at vertex {(i + 1) % n}")
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            hits = segment_hits(a, e, poly[j], poly[(j + 1) % n])
            if len(hits) == 1 and hits[0].sign() >= 0 and (hits[0] - 1).sign() <= 0:
                raise NotSimple(f"polygon {name} self-intersects (edges {i} and {j})")
            if len(hits) == 2 and (hits[0] - 1).sign() <= 0 and hits[1].sign() >= 0:
                raise NotSimple(f"polygon {name} self-intersects (edges {i} and {j})")


# ---------------------------------------------------------------------------
# operations


def vertex_cycles(net: PolygonNet) -> list[Singularity]:
    return net.vertex_cycles()


def stratum(net: PolygonNet) -> Stratum:
    ks = tuple(sorted(s.multiplicity for s in net.vertex_cycles() if s.multiplicity > 0))
    total = sum(ks)
    if total % 2:
        raise AngleNotMultipleOf2Pi("sum of multiplicities is odd")
    return Stratum(ks, 1 + total // 2)


def area(net: PolygonNet) -> FieldElement:
    total = net.field.zero()
    for poly in net.polygons:
        total = total + shoelace2(poly)
    return total / 2


def _matrix(net_field: FieldSpec, M) -> tuple[tuple[FieldElement, FieldElement], tuple[FieldElement, FieldElement]]:
    (a, b), (c, d) = M
    return (net_field.coerce(a), net_field.coerce(b)), (net_field.coerce(c), net_field.coerce(d))


def mat_apply(M, v: Vec2) -> Vec2:
    (a, b), (c, d) = M
    return Vec2(a * v.x + b * v.y, c * v.x + d * v.y)


def apply_matrix(net: PolygonNet, M) -> PolygonNet:
    """Image of the net under a 2x2 matrix of positive determinant."""
    M = _matrix(net.field, M)
    (a, b), (c, d) = M
    det = a * d - b * c
    s = det.sign()
    if s == 0:
        raise SingularMatrix("matrix is singular")
    if s < 0:
        raise OrientationReversing("matrix reverses orientation")
    polys = [[mat_apply(M, v) for v in poly] for poly in net.polygons]
    return net.replace(polygons=polys)


def is_convex_pattern(net: PolygonNet) -> bool:
    if len(net.polygons) != 1:
        return False
    poly = net.polygons[0]
    n = len(poly)
    for i in range(n):
        e1 = poly[(i + 1) % n] - poly[i]
        e2 = poly[(i + 2) % n] - poly[(i + 1) % n]
        if cross(e1, e2).sign() < 0:
            return False
    return True


def is_face_to_face(net: PolygonNet) -> bool:
    """Every edge pair is joined by a segment through the interior between identified points."""
    if len(net.polygons) != 1:
        raise MultiPolygonUnsupported("face-to-face test needs a single-polygon net")
    poly = net.polygons[0]
    return all(_pair_face_to_face(net, poly, h) for h, _ in net.edge_pairs())


def _pair_face_to_face(net: PolygonNet, poly, h) -> bool:
    a, b = net.edge(*h)
    T = net.translation(*h)
    e = b - a
    den = cross(e, T)
    if den.is_zero():
        return False
    half = net.field.coerce(Fraction(1, 2))
    x = a + e * half
    if open_segment_inside(poly, x, x + T):
        return True
    # t-values where the moving segment sweeps across a vertex
    ts = {net.field.zero(), net.field.one()}
    for w in poly:
        t = cross(w - a, T) / den
        if t.sign() > 0 and (t - 1).sign() < 0:
            ts.add(t)
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        x = a + e * ((t0 + t1) / 2)
        if open_segment_inside(poly, x, x + T):
            return True
    return False


def subdivide(net: PolygonNet, p: int, i: int, j: int) -> PolygonNet:
    """Cut polygon ``p`` along the diagonal from vertex ``i`` to vertex ``j``.

    The first piece keeps index ``p``; the second is appended. The new pair of
    chord edges is glued together.
    """
    poly = net.polygons[p]
    n = len(poly)
    i, j = i % n, j % n
    if i > j:
        i, j = j, i
    if j - i < 2 or (i == 0 and j == n - 1):
        raise BadChord(f"vertices {i} and {j} are adjacent")
    if not open_segment_inside(poly, poly[i], poly[j]):
        raise BadChord(f"chord {i}-{j} is not a diagonal of polygon {net.names[p]}")
    first = list(poly[i : j + 1])
    second = list(poly[j:]) + list(poly[: i + 1])
    q = len(net.polygons)

    def remap(h):
        pp, e = h
        if pp != p:
            return h
        if i <= e < j:
            return (p, e - i)
        return (q, (e - j) % n)

    pairing = {}
    for h, g in net.pairing.items():
        pairing[remap(h)] = remap(g)
    c1 = (p, len(first) - 1)
    c2 = (q, len(second) - 1)
    pairing[c1] = c2
    pairing[c2] = c1

    def remap_v(c):
        pp, v = c
        if pp != p:
            return c
        if i <= v <= j:
            return (p, v - i)
        return (q, (v - j) % n)

    marked = {remap_v(c) for c in net.marked}
    polys = list(net.polygons)
    polys[p] = tuple(first)
    polys.append(tuple(second))
    names = list(net.names)
    new = f"{net.names[p]}'"
    while new in names:
        new += "'"
    names.append(new)
    return PolygonNet(net.field, polys, pairing, marked, names)


def triangulate(net: PolygonNet) -> PolygonNet:
    """Cut every polygon into triangles by diagonals (ear clipping, exact)."""
    cur = net
    p = 0
    while p < len(cur.polygons):
        poly = cur.polygons[p]
        n = len(poly)
        if n == 3:
            p += 1
            continue
        chord = None
        for k in range(n):
            prev, here, nxt = poly[k - 1], poly[k], poly[(k + 1) % n]
            if cross(here - prev, nxt - here).sign() > 0 and open_segment_inside(poly, prev, nxt):
                chord = ((k - 1) % n, (k + 1) % n)
                break
        if chord is None:
            for k in range(n):
                for m in range(k + 2, n):
                    if k == 0 and m == n - 1:
                        continue
                    if open_segment_inside(poly, poly[k], poly[m]):
                        chord = (k, m)
                        break
                if chord:
                    break
        if chord is None:
            raise NotSimple(f"no diagonal found in polygon {cur.names[p]}")
        cur = subdivide(cur, p, *chord)
    return cur


# ---------------------------------------------------------------------------
# net file format

_TOKEN = re.compile(r"\S+")


def parse_net(text: str) -> PolygonNet:
    """Parse the net text format; errors carry line/column positions."""
    fld = None
    polygons: list[list[Vec2]] = []
    names: list[str] = []
    name_index: dict[str, int] = {}
    pairs = []
    marks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not toks:
            continue
        kw, col = toks[0]

        def err(msg, c=col):
            return NetSyntaxError(msg, lineno, c)

        if kw == "field":
            if fld is not None:
                raise err("duplicate field header")
            if len(toks) < 2:
                raise err("field header needs a degree")
            try:
                d = int(toks[1][0])
            except ValueError:
                raise err("degree must be an integer", toks[1][1]) from None
            if d < 1:
                raise err("degree must be >= 1", toks[1][1])
            if len(toks) != d + 4:
                raise err(f"field header needs {d} coefficients and two interval endpoints")
            vals = []
            for t, c in toks[2:]:
                try:
                    vals.append(parse_rational(t))
                except (ValueError, ZeroDivisionError):
                    raise err(f"bad rational {t!r}", c) from None
            try:
                fld = field_make(vals[:d] + [1], (vals[d], vals[d + 1]))
            except (ValueError, ArithmeticError) as exc:
                raise BadField(f"line {lineno}: {exc}") from exc
        elif kw == "polygon":
            if fld is None:
                raise err("polygon before field header")
            if len(toks) != 2:
                raise err("expected: polygon <id>")
            name = toks[1][0]
            if "." in name:
                raise err("polygon id may not contain '.'", toks[1][1])
            if name in name_index:
                raise err(f"duplicate polygon id {name!r}", toks[1][1])
            name_index[name] = len(polygons)
            names.append(name)
            polygons.append([])
        elif kw == "v":
            if not polygons:
                raise err("vertex outside a polygon")
            if len(toks) != 3:
                raise err("expected: v <x> <y>")
            coords = []
            for t, c in toks[1:]:
                try:
                    coords.append(fld.parse(t))
                except (ValueError, ZeroDivisionError) as exc:
                    raise err(str(exc), c) from None
            polygons[-1].append(Vec2(*coords))
        elif kw in ("pair", "mark"):
            want = 3 if kw == "pair" else 2
            if len(toks) != want:
                raise err(f"expected {want - 1} <polygon>.<index> references")
            refs = []
            for t, c in toks[1:]:
                pid, dot_, idx = t.rpartition(".")
                if not dot_ or pid not in name_index:
                    raise err(f"bad reference {t!r}", c)
                try:
                    k = int(idx)
                except ValueError:
                    raise err(f"bad index in {t!r}", c) from None
                refs.append(((name_index[pid], k), c))
            if kw == "pair":
                pairs.append((refs, lineno))
            else:
                marks.append(refs[0][0])
        else:
            raise err(f"unknown keyword {kw!r}")
    if fld is None:
        raise NetSyntaxError("missing field header", 1, 1)
    pairing = {}
    for refs, lineno in pairs:
        (h, c1), (g, c2) = refs
        for ref, c in ((h, c1), (g, c2)):
            p, e = ref
            if not 0 <= e < len(polygons[p]):
                raise NetSyntaxError(f"edge index {e} out of range", lineno, c)
            if ref in pairing:
                raise PairingMismatch(f"line {lineno}: edge {names[p]}.{e} paired twice")
        pairing[h] = g
        pairing[g] = h
    return PolygonNet(fld, polygons, pairing, marks, names)


def serialize_net(net: PolygonNet) -> str:
    lines = [net.field.header()]
    for name, poly in zip(net.names, net.polygons):
        lines.append(f"polygon {name}")
        for v in poly:
            lines.append(f"v {net.field.format(v.x)} {net.field.format(v.y)}")
    for h, g in net.edge_pairs():
        lines.append(f"pair {net.names[h[0]]}.{h[1]} {net.names[g[0]]}.{g[1]}")
    for p, v in sorted(net.marked):
        lines.append(f"mark {net.names[p]}.{v}")
    return "\n".join(lines) + "\n"


def load_net(path) -> PolygonNet:
    with open(path, encoding="utf-8") as fh:
        return parse_net(fh.read())
