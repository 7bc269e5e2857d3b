"""Reference surfaces.

Every entry is built from exact data and validated on construction. Expected
facts listed in :data:`CATALOG` are claims to be re-checked by the tests, not
trusted inputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import AlphaRational, BadParameters, NotTransitive
from .exactnum import QQ, FieldElement, FieldSpec, field_make
from .surface import PolygonNet, Vec2

QSQRT2 = field_make([-2, 0, 1], (1, 2))
QSQRT5 = field_make([-5, 0, 1], (2, 3))


def _with_marks(net: PolygonNet) -> PolygonNet:
    """Flag every vertex class of cone angle 2pi as a marked point."""
    marks = {s.corners[0] for s in net.vertex_cycles() if s.turns == 1}
    if marks == set(net.marked):
        return net
    return net.replace(marked=marks)


def _square(fld: FieldSpec, x0, y0) -> list[Vec2]:
    return [Vec2.of(fld, x0 + dx, y0 + dy) for dx, dy in ((0, 0), (1, 0), (1, 1), (0, 1))]


def square_torus() -> PolygonNet:
    net = PolygonNet(QQ, [_square(QQ, 0, 0)], {(0, 0): (0, 2), (0, 2): (0, 0), (0, 1): (0, 3), (0, 3): (0, 1)})
    return _with_marks(net)


def perm_from_cycles(text: str, n: int) -> list[int]:
    """0-based image list from 1-based cycle notation, e.g. ``"(1 2)(3 4)"``."""
    images = list(range(n))
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) - 1 for t in re.split(r"[,\s]+", cyc.strip()) if t]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return images


def _check_perm(perm: Sequence[int], n: int, label: str) -> list[int]:
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(n)):
        raise BadParameters(f"{label} is not a permutation of 0..{n - 1}")
    return perm


def square_tiled(h_perm: Sequence[int], v_perm: Sequence[int]) -> PolygonNet:
    """Origami: square ``i`` has square ``h_perm[i]`` to its right and ``v_perm[i]`` above."""
    n = len(h_perm)
    if n == 0 or len(v_perm) != n:
        raise BadParameters("permutations must have the same positive length")
    h = _check_perm(h_perm, n, "h_perm")
    v = _check_perm(v_perm, n, "v_perm")
    seen = {0}
    todo = [0]
    while todo:
        i = todo.pop()
        for j in (h[i], v[i]):
            if j not in seen:
                seen.add(j)
                todo.append(j)
    if len(seen) != n:
        raise NotTransitive("the permutations do not act transitively; the surface is disconnected")
    polys = [_square(QQ, i, 0) for i in range(n)]
    pairing = {}
    for i in range(n):
        pairing[(i, 1)] = (h[i], 3)
        pairing[(h[i], 3)] = (i, 1)
        pairing[(i, 2)] = (v[i], 0)
        pairing[(v[i], 0)] = (i, 2)
    return _with_marks(PolygonNet(QQ, polys, pairing))


def l_origami() -> PolygonNet:
    """Three squares: two side by side, one on top of the left one."""
    return square_tiled(perm_from_cycles("(1 2)", 3), perm_from_cycles("(1 3)", 3))


def regular_octagon() -> PolygonNet:
    """Regular octagon of side 1 over Q(sqrt 2), opposite sides glued."""
    K = QSQRT2
    s = K.gen() / 2
    one = K.one()
    zero = K.zero()
    pts = [
        (zero, zero),
        (one, zero),
        (one + s, s),
        (one + s, one + s),
        (one, one + 2 * s),
        (zero, one + 2 * s),
        (-s, one + s),
        (-s, s),
    ]
    poly = [Vec2(x, y) for x, y in pts]
    pairing = {}
    for e in range(8):
        pairing[(0, e)] = (0, (e + 4) % 8)
    return _with_marks(PolygonNet(K, [poly], pairing))


def l_shaped(a, b) -> PolygonNet:
    """L-shaped table: unit-width arms of lengths ``a`` (horizontal) and ``b`` (vertical)."""
    if isinstance(a, FieldElement):
        K = a.field
    elif isinstance(b, FieldElement):
        K = b.field
    else:
        K = QQ
    a, b = K.coerce(a), K.coerce(b)
    if not (a > 1 and b > 1):
        raise BadParameters("arm lengths must exceed 1")
    o, one = K.zero(), K.one()
    pts = [(o, o), (one, o), (a, o), (a, one), (one, one), (one, b), (o, b), (o, one)]
    poly = [Vec2(x, y) for x, y in pts]
    pairs = [((0, 0), (0, 5)), ((0, 1), (0, 3)), ((0, 2), (0, 7)), ((0, 4), (0, 6))]
    pairing = {}
    for h, g in pairs:
        pairing[h] = g
        pairing[g] = h
    return _with_marks(PolygonNet(K, [poly], pairing))


def _single_polygon(K: FieldSpec, pts, pairs) -> PolygonNet:
    poly = [Vec2.of(K, x, y) for x, y in pts]
    pairing = {}
    for e, f in pairs:
        pairing[(0, e)] = (0, f)
        pairing[(0, f)] = (0, e)
    return _with_marks(PolygonNet(K, [poly], pairing))


def staircase() -> PolygonNet:
    """Two-step staircase whose edge pairs all see each other through the interior."""
    pts = [(0, 0), (1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (2, 2), (1, 2), (1, 1), (0, 1)]
    # bottom-left/step, bottom-right/top-right, riser/left, step/top-left, right/inner riser
    pairs = [(0, 8), (1, 5), (2, 9), (3, 6), (4, 7)]
    return _single_polygon(QQ, pts, pairs)


def blocked_l() -> PolygonNet:
    """L pattern in which one edge pair only meets across the reflex corner."""
    pts = [(0, 0), (1, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3), (0, 2)]
    # (3,0)-(3,1) is glued to (0,3)-(0,2): the segments pass outside near (1,1)
    pairs = [(0, 5), (1, 3), (2, 6), (4, 7)]
    return _single_polygon(QQ, pts, pairs)


def strange_surface(alpha=None) -> PolygonNet:
    from ._strange import build

    if alpha is None:
        alpha = QSQRT2.gen() - 1
    if not isinstance(alpha, FieldElement) or alpha.is_rational():
        raise AlphaRational("alpha must be an irrational field element")
    return build(alpha)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: Callable[[], PolygonNet]
    expected: dict = field(default_factory=dict)
    notes: str = ""


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("torus", square_torus, {"stratum": (), "genus": 1, "area": 1, "square_tiled": 1}),
        CatalogEntry(
            "l3",
            l_origami,
            {"stratum": (2,), "genus": 2, "area": 3, "square_tiled": 3},
            "three-square L origami, h=(1 2), v=(1 3)",
        ),
        CatalogEntry(
            "octagon",
            regular_octagon,
            {"stratum": (2,), "genus": 2, "convex": True},
            "regular octagon, side 1",
        ),
        CatalogEntry("lshape", lambda: l_shaped(2, 2), {"stratum": (2,), "genus": 2, "area": 3, "convex": False}),
        CatalogEntry(
            "golden_l",
            lambda: l_shaped((1 + QSQRT5.gen()) / 2, (1 + QSQRT5.gen()) / 2),
            {"stratum": (2,), "genus": 2, "convex": False},
            "L-shaped table with golden-ratio arms over Q(sqrt 5)",
        ),
        CatalogEntry(
            "origami4",
            lambda: square_tiled(perm_from_cycles("(1 2 3 4)", 4), perm_from_cycles("(1 2)", 4)),
            {"square_tiled": 4},
        ),
        CatalogEntry("staircase", staircase, {"face_to_face": True}),
        CatalogEntry("blocked_l", blocked_l, {"face_to_face": False}),
        CatalogEntry(
            "strange",
            strange_surface,
            {"stratum": (2,), "genus": 2},
            "reconstruction: two periodic directions with three cylinders in total",
        ),
    ]
}


def get(name: str) -> PolygonNet:
    """Build a catalog surface; ``origami:<h>:<v>`` takes 1-based image lists."""
    if name.startswith("origami:"):
        try:
            _, h, v = name.split(":")
            hp = [int(t) - 1 for t in h.split(",")]
            vp = [int(t) - 1 for t in v.split(",")]
        except ValueError:
            raise BadParameters(f"bad origami name {name!r}; expected origami:<h images>:<v images>") from None
        return square_tiled(hp, vp)
    if name not in CATALOG:
        raise BadParameters(f"unknown catalog surface {name!r}; known: {', '.join(CATALOG)}")
    return CATALOG[name].builder()
