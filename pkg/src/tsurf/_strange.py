"""Frozen reconstruction of a genus-2 surface with two purely periodic directions.

The net is one vertical band of horizontal extent 2 whose left side is cut
into segments of lengths 1, alpha, 1 (bottom to top) and whose right side,
raised by 1, carries the same segments in reverse order. The vertical
direction is a single cylinder; the (2, 1) direction has two cylinders of
widths 2 and 1. Horizontally there is a cylinder of width 2 next to a part
where separatrices never close, and hol(H_1) has Q-rank 3, so the surface is
not a torus covering.
Found by ``scripts/search_strange_surface.py``.
"""

from __future__ import annotations

from .exactnum import FieldElement
from .surface import PolygonNet, Vec2

WIDTH = 2
TWIST = 1
DESIGNATED_DIRECTIONS = ((0, 1), (2, 1))


def build(alpha: FieldElement) -> PolygonNet:
    K = alpha.field
    if alpha.sign() <= 0:
        raise ValueError("alpha must be positive")
    l1, l2, l3 = K.one(), alpha, K.one()
    h, t = K.coerce(WIDTH), K.coerce(TWIST)
    z = K.zero()
    w = l1 + l2 + l3
    pts = [(z, z), (h, t), (h, t + l3), (h, t + l3 + l2), (h, t + w), (z, w), (z, l1 + l2), (z, l1)]
    pairing = {}
    for a, b in ((0, 4), (1, 5), (2, 6), (3, 7)):
        pairing[(0, a)] = (0, b)
        pairing[(0, b)] = (0, a)
    return PolygonNet(K, [[Vec2(x, y) for x, y in pts]], pairing, names=["band"])
