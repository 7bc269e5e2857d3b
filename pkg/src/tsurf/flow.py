"""Straight-line flow on a net.

Separatrices are traced exactly from every vertex germ. When all of them end
in vertices within the cutoff, the saddle connections are chained side by
side into cylinder boundaries; a transverse trace gives each cylinder's
height and the closed orbit at mid-height gives its core curve.

Lengths along a direction ``v`` are reported as multiples of ``v`` itself:
a cylinder of width ``w`` has core holonomy ``w * v`` and height
``h = area / w``. Both stay in the coordinate field even when ``|v|`` does
not; for ``v = (1, 0)`` or ``(0, 1)`` they are the euclidean values.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import InternalGeometryError, NotComplete
from .exactnum import FieldElement, FieldSpec, rational_dependence
from .surface import PolygonNet, Vec2, area, extend_field, cross, dot, in_sector, on_segment, point_in_polygon, same_direction, triangulate
from .topology import HomologyClass, chain_holonomy, cw_complex, net_homology

# ---------------------------------------------------------------------------
# directions


@dataclass(frozen=True, eq=False)
class Direction:
    """Canonical representative of a line direction (lexicographically positive)."""

    v: Vec2

    @classmethod
    def of(cls, v: Vec2) -> Direction:
        if v.is_zero():
            raise ValueError("zero vector has no direction")
        fld = v.x.field
        if not v.x.is_zero():
            w = Vec2(fld.one(), v.y / v.x)
        else:
            w = Vec2(fld.zero(), fld.one())
        if w.y.is_rational():
            q = w.y.to_fraction()
            if w.x.is_zero():
                return cls(w)
            return cls(Vec2.of(fld, q.denominator, q.numerator))
        return cls(w)

    @property
    def key(self):
        return (self.v.x.coords, self.v.y.coords)

    def __eq__(self, other):
        return isinstance(other, Direction) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return f"({self.v.x}, {self.v.y})"

    def __repr__(self):
        return f"Direction({self.v.x}, {self.v.y})"


def direction_cmp(d1: Direction, d2: Direction) -> int:
    """Order by angle in (-pi/2, pi/2]."""
    c = cross(d1.v, d2.v).sign()
    return -c


def sort_directions(ds) -> list[Direction]:
    return sorted(ds, key=functools.cmp_to_key(direction_cmp))


def _as_direction(net: PolygonNet, d) -> Direction:
    if isinstance(d, Direction):
        return d
    if isinstance(d, Vec2):
        return Direction.of(d)
    x, y = d
    return Direction.of(Vec2.of(net.field, x, y))


def _align(net: PolygonNet, direction) -> tuple[PolygonNet, Direction]:
    """Direction and net over a common field (a rational net is lifted)."""
    if isinstance(direction, Direction) and direction.v.x.field != net.field:
        net = extend_field(net, direction.v.x.field)
    elif isinstance(direction, Vec2) and direction.x.field != net.field:
        net = extend_field(net, direction.x.field)
    return net, _as_direction(net, direction)


@dataclass(frozen=True)
class LengthSq:
    """A length bound given by its square, e.g. ``LengthSq(2)`` for sqrt 2."""

    value: object


def _squared(net: PolygonNet, bound) -> FieldElement:
    """Square of a length bound, as an element of the net's field.

    A bound from another field is accepted when its square is rational
    (e.g. ``sqrt 2`` as a bound on a rational net).
    """
    if isinstance(bound, LengthSq):
        sq = bound.value
        if isinstance(sq, FieldElement) and sq.field != net.field:
            if not sq.is_rational():
                raise ValueError("squared bound is not in the net's field")
            sq = sq.to_fraction()
        sq = net.field.coerce(sq)
        if sq.sign() <= 0:
            raise ValueError("bound must be positive")
        return sq
    if isinstance(bound, (int, Rational)):
        b = net.field.coerce(bound)
    elif isinstance(bound, FieldElement):
        if bound.field != net.field:
            sq = bound * bound
            if not sq.is_rational():
                raise ValueError("bound from another field must have a rational square")
            if bound.sign() <= 0:
                raise ValueError("bound must be positive")
            return net.field.coerce(sq.to_fraction())
        b = bound
    else:
        raise TypeError(f"bad bound {bound!r}")
    if b.sign() <= 0:
        raise ValueError("bound must be positive")
    return b * b


# ---------------------------------------------------------------------------
# traced objects


@dataclass(frozen=True, eq=False)
class Segment:
    polygon: int
    start: Vec2
    end: Vec2


@dataclass(frozen=True, eq=False)
class SaddleConnection:
    start: int  # vertex id
    end: int
    start_key: tuple[int, int]
    end_key: tuple[int, int]
    holonomy: Vec2
    segments: tuple[Segment, ...]


@dataclass(frozen=True, eq=False)
class Escape:
    start: int
    start_key: tuple[int, int]
    traced: FieldElement  # parameter along the direction vector


@dataclass(frozen=True, eq=False)
class Cylinder:
    direction: Direction
    width: FieldElement
    height: FieldElement
    core_class: HomologyClass
    core_holonomy: Vec2
    bottom: tuple[int, ...]  # saddle connection indices
    top: tuple[int, ...]

    @property
    def area(self) -> FieldElement:
        return self.width * self.height


@dataclass(frozen=True, eq=False)
class CylinderDecomposition:
    direction: Direction
    cylinders: tuple[Cylinder, ...]
    saddle_connections: tuple[SaddleConnection, ...]
    complete: bool = True

    @property
    def commensurable(self) -> bool:
        return rational_dependence([c.width for c in self.cylinders])[0] == 1


@dataclass(frozen=True, eq=False)
class Inconclusive:
    direction: Direction
    cutoff_sq: FieldElement
    escaped: int
    saddle_connections: tuple[SaddleConnection, ...] = field(default=())
    cylinders: tuple[Cylinder, ...] = field(default=())  # those whose boundaries closed

    complete = False


# ---------------------------------------------------------------------------
# germs


def _half(a: Vec2, x: Vec2) -> int:
    c = cross(a, x).sign()
    return 0 if c > 0 or (c == 0 and dot(a, x).sign() > 0) else 1


def outgoing_germs(net: PolygonNet, u: Vec2) -> list[tuple[int, tuple[int, int], tuple[int, int]]]:
    """(vertex id, germ key, corner) for every ray leaving a vertex in direction ``u``."""
    out = []
    for vid, s in enumerate(net.vertex_cycles()):
        for pos, c in enumerate(s.corners):
            a, b = net.corner_sector(*c)
            if in_sector(a, b, u):
                out.append((vid, (pos, _half(a, u)), c))
    return out


def _incoming_key(net: PolygonNet, corner, w: Vec2):
    """Key of the germ of direction ``w`` (pointing into the polygon) at ``corner``."""
    a, b = net.corner_sector(*corner)
    if same_direction(w, b):
        corner = net.next_corner(*corner)
        vid, pos = net.corner_position(*corner)
        return vid, (pos, 0)
    vid, pos = net.corner_position(*corner)
    return vid, (pos, _half(a, w))


# ---------------------------------------------------------------------------
# ray casting inside one polygon


def _ray_exit(poly, x: Vec2, u: Vec2):
    """First boundary point hit by ``x + s*u`` with ``s > 0``.

    Returns ``(s, edge, vertex)`` where ``vertex`` is a polygon vertex index if
    the hit point is a vertex, else None.
    """
    n = len(poly)
    best_s = None
    best_e = None
    for e in range(n):
        a = poly[e]
        b = poly[(e + 1) % n]
        ed = b - a
        den = cross(u, ed)
        ap = a - x
        if den.is_zero():
            if not cross(ap, u).is_zero():
                continue
            uu = dot(u, u)
            for s, idx in ((dot(ap, u) / uu, e), (dot(b - x, u) / uu, (e + 1) % n)):
                if s.sign() > 0 and (best_s is None or s < best_s):
                    best_s, best_e = s, ("v", idx)
            continue
        sd = den.sign()
        nt = cross(ap, u)
        # t = nt/den in [0, 1]
        if sd > 0:
            if nt.sign() < 0 or (nt - den).sign() > 0:
                continue
        else:
            if nt.sign() > 0 or (nt - den).sign() < 0:
                continue
        ns = cross(ap, ed)
        if ns.sign() * sd <= 0:
            continue
        s = ns / den
        if best_s is None or s < best_s:
            if nt.is_zero():
                best_s, best_e = s, ("v", e)
            elif nt == den:
                best_s, best_e = s, ("v", (e + 1) % n)
            else:
                best_s, best_e = s, ("e", e)
        elif s == best_s and best_e[0] == "e":
            # tie with another edge: the hit point is a shared vertex
            if nt.is_zero():
                best_e = ("v", e)
            elif nt == den:
                best_e = ("v", (e + 1) % n)
    if best_s is None:
        raise InternalGeometryError("ray leaves polygon without meeting its boundary")
    kind, idx = best_e
    if kind == "v":
        return best_s, None, idx
    return best_s, idx, None


def trace_separatrix(net: PolygonNet, germ, direction, cutoff) -> SaddleConnection | Escape:
    """Follow the ray leaving a vertex germ until it meets a vertex or exceeds ``cutoff``.

    ``germ`` is an entry of :func:`outgoing_germs` (or just its corner).
    """
    net, d = _align(net, direction)
    cutoff_sq = _squared(net, cutoff)
    return _trace(net, germ, d.v, cutoff_sq)


def _trace(net: PolygonNet, germ, u: Vec2, cutoff_sq) -> SaddleConnection | Escape:
    if len(germ) == 2:
        corner = germ
        vid, pos = net.corner_position(*corner)
        a, _ = net.corner_sector(*corner)
        key = (pos, _half(a, u))
    else:
        vid, key, corner = germ
    uu = dot(u, u)
    p, i = corner
    poly = net.polygons[p]
    x = poly[i]
    total = net.field.zero()
    segs = []
    a, _ = net.corner_sector(p, i)
    if same_direction(u, a):
        s = dot(a, u) / uu
        if ((total + s) ** 2 * uu) > cutoff_sq:
            return Escape(vid, key, total + s)
        segs.append(Segment(p, x, poly[(i + 1) % len(poly)]))
        total = s
        end_corner = (p, (i + 1) % len(poly))
    else:
        q = p
        while True:
            s, e, v = _ray_exit(net.polygons[q], x, u)
            if ((total + s) ** 2 * uu) > cutoff_sq:
                return Escape(vid, key, total + s)
            y = x + u * s
            segs.append(Segment(q, x, y))
            total = total + s
            if v is not None:
                end_corner = (q, v)
                break
            T = net.translation(q, e)
            q, _ = net.pairing[(q, e)]
            x = y + T
    evid, ekey = _incoming_key(net, end_corner, -u)
    return SaddleConnection(vid, evid, key, ekey, u * total, tuple(segs))


# ---------------------------------------------------------------------------
# cylinders


def _slide_corner(net: PolygonNet, q: int, f: int) -> int:
    """Corner of polygon ``q`` reached by sliding a point of edge ``f`` to the start of its glued edge."""
    if (q, f) < net.pairing[(q, f)]:
        return f
    return (f + 1) % len(net.polygons[q])


def crossing_word_chain(net: PolygonNet, word: Sequence[tuple[int, int, int]]) -> list[int]:
    """1-cycle homologous to a closed curve given as (polygon, entry edge, exit edge) visits."""
    cx = cw_complex(net)
    gid = {}
    for g, (h, k) in enumerate(cx.edges):
        gid[h] = (g, 1)
        gid[k] = (g, -1)
    z = [0] * cx.E
    for q, fin, fout in word:
        n = len(net.polygons[q])
        c = _slide_corner(net, q, fin)
        end = _slide_corner(net, q, fout)
        while c != end:
            g, s = gid[(q, c)]
            z[g] += s
            c = (c + 1) % n
    return z


def _transverse(net, start_poly, x, nvec, segs_by_poly, max_steps=100000):
    """Move from ``x`` along ``nvec`` until a saddle connection or a vertex is met.

    Returns ``(sc index or None, t, path)`` with path a list of (polygon, t0, t1, x0).
    """
    q = start_poly
    t_total = net.field.zero()
    path = []
    for _ in range(max_steps):
        poly = net.polygons[q]
        s_exit, e, v = _ray_exit(poly, x, nvec)
        best = None
        for idx, seg in segs_by_poly.get(q, ()):
            d = seg.end - seg.start
            den = cross(nvec, d)
            ap = seg.start - x
            if den.is_zero():
                if cross(ap, nvec).is_zero():
                    nn = dot(nvec, nvec)
                    for s in (dot(ap, nvec) / nn, dot(seg.end - x, nvec) / nn):
                        if s.sign() > 0 and (best is None or s < best[0]):
                            best = (s, idx, True)
                continue
            s = cross(ap, d) / den
            t = cross(ap, nvec) / den
            if s.sign() > 0 and t.sign() >= 0 and (t - 1).sign() <= 0:
                if best is None or s < best[0]:
                    best = (s, idx, t.is_zero() or t == 1)
        if best is not None and best[0] <= s_exit:
            path.append((q, t_total, t_total + best[0], x))
            if best[2]:  # endpoint of a saddle connection
                return None, t_total + best[0], path
            return best[1], t_total + best[0], path
        path.append((q, t_total, t_total + s_exit, x))
        t_total = t_total + s_exit
        if v is not None:
            return None, t_total, path
        y = x + nvec * s_exit
        T = net.translation(q, e)
        q, _ = net.pairing[(q, e)]
        x = y + T
        for idx, seg in segs_by_poly.get(q, ()):
            if on_segment(x, seg.start, seg.end):
                return idx, t_total, path
    raise InternalGeometryError("transverse trace did not terminate")


def _closed_orbit(net: PolygonNet, q0: int, x0: Vec2, u: Vec2, max_steps=200000):
    """Flow from interior point ``x0`` until it returns; returns (parameter, crossing word)."""
    uu = dot(u, u)
    q, x = q0, x0
    total = net.field.zero()
    entry = None
    word = []
    first_exit = None
    for step in range(max_steps):
        s, e, v = _ray_exit(net.polygons[q], x, u)
        if step > 0 and q == q0:
            w = x0 - x
            if cross(w, u).is_zero():
                s0 = dot(w, u) / uu
                if s0.sign() > 0 and s0 <= s:
                    word.append((q0, entry, first_exit))
                    return total + s0, word
        if v is not None:
            raise InternalGeometryError("closed orbit inside a cylinder met a vertex")
        if step == 0:
            first_exit = e
        else:
            word.append((q, entry, e))
        total = total + s
        y = x + u * s
        T = net.translation(q, e)
        q, entry = net.pairing[(q, e)]
        x = y + T
    raise InternalGeometryError("closed orbit did not close")


def _point_on_path(net, path, t):
    for q, t0, t1, x0 in path:
        if t0 < t < t1:
            return q, x0, t - t0
    return None


def cylinder_decomposition(net: PolygonNet, direction, cutoff) -> CylinderDecomposition | Inconclusive:
    """Cylinders in ``direction`` if every separatrix closes within ``cutoff``.

    When some separatrix escapes, the result is :class:`Inconclusive` but
    still lists the cylinders whose boundaries closed up.
    """
    net, d = _align(net, direction)
    u = d.v
    cutoff_sq = _squared(net, cutoff)
    germs = outgoing_germs(net, u)
    results = [_trace(net, g, u, cutoff_sq) for g in germs]
    escaped = sum(isinstance(r, Escape) for r in results)
    cylinders, closed = _cylinders(net, d, results)
    if escaped:
        return Inconclusive(d, cutoff_sq, escaped, closed, tuple(cylinders))
    total = net.field.zero()
    for c in cylinders:
        total = total + c.area
    if total != area(net):
        raise InternalGeometryError("cylinder areas do not add up to the surface area")
    return CylinderDecomposition(d, tuple(cylinders), closed, True)


def _cylinders(net: PolygonNet, d: Direction, results):
    u = d.v
    # renumber so that cylinder boundaries refer to saddle connection indices
    sc_index = {}
    scs = []
    for k, r in enumerate(results):
        if isinstance(r, SaddleConnection):
            sc_index[k] = len(scs)
            scs.append(r)

    keys: dict[int, list] = {}
    for k, r in enumerate(results):
        keys.setdefault(r.start, []).append((r.start_key, k))
    for v in keys.values():
        v.sort()

    def neighbour(k: int, below: bool) -> int:
        sc = results[k]
        ks = keys[sc.end]
        if below:
            nxt = [j for key, j in ks if key > sc.end_key]
            return nxt[0] if nxt else ks[0][1]
        prv = [j for key, j in ks if key < sc.end_key]
        return prv[-1] if prv else ks[-1][1]

    def chains(below: bool) -> list[tuple[int, ...]]:
        # neighbour is a permutation of the germs; keep its cycles free of escapes
        seen = set()
        out = []
        for start in range(len(results)):
            if start in seen or not isinstance(results[start], SaddleConnection):
                continue
            path = []
            c = start
            while c not in seen and isinstance(results[c], SaddleConnection):
                seen.add(c)
                path.append(c)
                c = neighbour(c, below)
            if c == start:
                out.append(tuple(path))
        return out

    bottoms = chains(below=False)
    tops = chains(below=True)
    top_of = {k: n for n, ch in enumerate(tops) for k in ch}

    zero = Vec2(net.field.zero(), net.field.zero())

    def chain_hol(ch):
        h = zero
        for k in ch:
            h = h + results[k].holonomy
        return h

    segs_by_poly: dict[int, list] = {}
    for k in sc_index:
        for seg in results[k].segments:
            segs_by_poly.setdefault(seg.polygon, []).append((k, seg))

    nvec = u.rot90()
    uu = dot(u, u)
    H = net_homology(net)
    used_tops = set()
    cylinders = []
    fractions = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 4), Fraction(3, 4), Fraction(1, 5)]
    for bottom in bottoms:
        hol = chain_hol(bottom)
        width = dot(hol, u) / uu
        if width.sign() <= 0 or not cross(hol, u).is_zero():
            raise InternalGeometryError("cylinder bottom is not parallel to the flow")
        seg = results[bottom[0]].segments[0]
        hit = None
        for fr in fractions:
            start = seg.start + (seg.end - seg.start) * fr
            k, t, path = _transverse(net, seg.polygon, start, nvec, segs_by_poly)
            if k is not None:
                hit = (k, t, path)
                break
        if hit is None:
            raise InternalGeometryError("transverse trace kept meeting vertices")
        k, t, path = hit
        top = top_of.get(k)
        if top is None or top in used_tops or chain_hol(tops[top]) != hol:
            raise InternalGeometryError("cylinder top and bottom do not match")
        used_tops.add(top)
        height = t * uu
        core = None
        for fr in fractions:
            loc = _point_on_path(net, path, t * fr)
            if loc is None:
                continue
            q, x0, dt = loc
            pt = x0 + nvec * dt
            if point_in_polygon(net.polygons[q], pt) == 1:
                core = (q, pt)
                break
        if core is None:
            raise InternalGeometryError("no interior point at mid-height")
        lam, word = _closed_orbit(net, core[0], core[1], u)
        if lam != width:
            raise InternalGeometryError("core orbit length differs from the boundary length")
        z = crossing_word_chain(net, word)
        if chain_holonomy(net, z) != hol:
            raise InternalGeometryError("core cycle holonomy mismatch")
        cls = H.project(z)
        cylinders.append(
            Cylinder(
                d,
                width,
                height,
                cls,
                hol,
                tuple(sc_index[j] for j in bottom),
                tuple(sc_index[j] for j in tops[top]),
            )
        )
    return cylinders, tuple(scs)


def is_purely_periodic_direction(dec: CylinderDecomposition) -> bool:
    if not getattr(dec, "complete", False):
        raise NotComplete("direction is not completely decomposed")
    return dec.commensurable


def core_curve_class(cyl: Cylinder) -> HomologyClass:
    return cyl.core_class


# ---------------------------------------------------------------------------
# saddle connection enumeration


def _tri(net: PolygonNet) -> PolygonNet:
    if "triangulation" not in net._cache:
        net._cache["triangulation"] = triangulate(net)
    return net._cache["triangulation"]


def _dist2_to_subsegment(src, a, b, wa, wb):
    e = b - a
    ts = []
    for w in (wa, wb):
        den = cross(w, e)
        if den.is_zero():
            continue
        ts.append(cross(w, src - a) / den)
    zero, one = a.x.field.zero(), a.x.field.one()
    if len(ts) == 2:
        t0, t1 = sorted(ts)
        t0 = max(t0, zero)
        t1 = min(t1, one)
        if t0 > t1:
            t0, t1 = zero, one
    else:
        t0, t1 = zero, one
    tp = dot(src - a, e) / dot(e, e)
    tp = min(max(tp, t0), t1)
    p = a + e * tp
    return (p - src).norm2()


def saddle_connection_holonomies(net: PolygonNet, length_bound) -> list[tuple[int, Vec2]]:
    """(start vertex, holonomy) of every saddle connection of length <= bound."""
    L2 = _squared(net, length_bound)
    tri = _tri(net)
    found = []
    stack = []
    for p, poly in enumerate(tri.polygons):
        for i in range(3):
            P = poly[i]
            a = poly[(i + 1) % 3] - P
            b = poly[(i + 2) % 3] - P
            if a.norm2() <= L2:
                found.append(((p, i), a))
            stack.append(((p, i), p, (i + 1) % 3, P, a, b))
    while stack:
        origin, q, f, src, wa, wb = stack.pop()
        A, B = tri.edge(q, f)
        if _dist2_to_subsegment(src, A, B, wa, wb) > L2:
            continue
        T = tri.translation(q, f)
        q2, f2 = tri.pairing[(q, f)]
        src2 = src + T
        poly = tri.polygons[q2]
        C = poly[(f2 + 2) % 3]
        d = C - src2
        if cross(wa, d).sign() <= 0:
            stack.append((origin, q2, (f2 + 2) % 3, src2, wa, wb))
        elif cross(d, wb).sign() <= 0:
            stack.append((origin, q2, (f2 + 1) % 3, src2, wa, wb))
        else:
            if d.norm2() <= L2:
                found.append((origin, d))
            stack.append((origin, q2, (f2 + 1) % 3, src2, wa, d))
            stack.append((origin, q2, (f2 + 2) % 3, src2, d, wb))
    return [(tri.corner_vertex(*o), h) for o, h in found]


def enumerate_directions(net: PolygonNet, length_bound) -> list[Direction]:
    """Directions of all saddle connections of length <= ``length_bound``, sorted by angle."""
    ds = {Direction.of(h) for _, h in saddle_connection_holonomies(net, length_bound)}
    return sort_directions(ds)
