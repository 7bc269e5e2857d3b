"""Deterministic SVG pictures of nets and cylinder decompositions.

Coordinates are converted to floats for display only. Cylinder shading is
decided exactly: each face cut out by the saddle connections is assigned to
the cylinder whose bottom it sees when moving against the normal direction.
"""

from __future__ import annotations

from fractions import Fraction

from shapely.geometry import LineString
from shapely.ops import polygonize, unary_union

from .errors import TsurfError
from .flow import CylinderDecomposition, Inconclusive, _transverse
from .surface import PolygonNet, Vec2, point_in_polygon

EDGE_COLORS = [
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
    "#7f7f7f",
]
FILL_COLORS = ["#a6cee3", "#fdbf6f", "#b2df8a", "#fb9a99", "#cab2d6", "#ffff99", "#e5c494", "#b3b3b3"]

SCALE = 120.0
GAP = 0.5
MARGIN = 20.0


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _layout(net: PolygonNet):
    """Per-polygon float offsets placing the polygons left to right."""
    offsets = []
    cursor = 0.0
    ymin = ymax = None
    for poly in net.polygons:
        xs = [float(v.x) for v in poly]
        ys = [float(v.y) for v in poly]
        offsets.append((cursor - min(xs), 0.0))
        cursor += max(xs) - min(xs) + GAP
        ymin = min(ys) if ymin is None else min(ymin, min(ys))
        ymax = max(ys) if ymax is None else max(ymax, max(ys))
    width = max(cursor - GAP, 0.0)
    return offsets, width, ymin, ymax


def _faces(net: PolygonNet, p: int, segments):
    """Float faces of polygon ``p`` cut by the given segments."""
    poly = net.polygons[p]
    n = len(poly)
    lines = [LineString([(float(poly[i].x), float(poly[i].y)), (float(poly[(i + 1) % n].x), float(poly[(i + 1) % n].y))]) for i in range(n)]
    for seg in segments:
        lines.append(LineString([(float(seg.start.x), float(seg.start.y)), (float(seg.end.x), float(seg.end.y))]))
    faces = list(polygonize(unary_union(lines)))
    return sorted(faces, key=lambda f: (round(f.bounds[0], 9), round(f.bounds[1], 9), round(f.area, 9)))


def _face_cylinders(net: PolygonNet, dec):
    """List of (polygon, float face, cylinder index) for shaded regions."""
    scs = dec.saddle_connections
    segs_by_poly: dict[int, list] = {}
    for k, sc in enumerate(scs):
        for seg in sc.segments:
            segs_by_poly.setdefault(seg.polygon, []).append((k, seg))
    bottom_of = {}
    for ci, cyl in enumerate(dec.cylinders):
        for k in cyl.bottom:
            bottom_of[k] = ci
    down = -dec.direction.v.rot90()
    out = []
    for p in range(len(net.polygons)):
        segs = [seg for _, seg in segs_by_poly.get(p, [])]
        for face in _faces(net, p, segs):
            rp = face.representative_point()
            pt = Vec2.of(net.field, Fraction(rp.x).limit_denominator(10**9), Fraction(rp.y).limit_denominator(10**9))
            if point_in_polygon(net.polygons[p], pt) != 1:
                continue
            try:
                k, _, _ = _transverse(net, p, pt, down, segs_by_poly, max_steps=500)
            except TsurfError:
                continue
            if k is not None and k in bottom_of:
                out.append((p, face, bottom_of[k]))
    return out


def render_svg(net: PolygonNet, decomposition: CylinderDecomposition | Inconclusive | None = None) -> str:
    offsets, width, ymin, ymax = _layout(net)
    W = width * SCALE + 2 * MARGIN
    H = (ymax - ymin) * SCALE + 2 * MARGIN

    def pt(p, x, y):
        ox, _ = offsets[p]
        return MARGIN + (x + ox) * SCALE, MARGIN + (ymax - y) * SCALE

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(W)}" height="{_f(H)}" viewBox="0 0 {_f(W)} {_f(H)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if decomposition is not None and decomposition.cylinders:
        out.append('<g class="cylinders" stroke="none">')
        for p, face, ci in _face_cylinders(net, decomposition):
            coords = list(face.exterior.coords)[:-1]
            d = " ".join(f"{_f(a)},{_f(b)}" for a, b in (pt(p, x, y) for x, y in coords))
            color = FILL_COLORS[ci % len(FILL_COLORS)]
            out.append(f'<polygon class="cyl{ci}" points="{d}" fill="{color}" fill-opacity="0.8"/>')
        out.append("</g>")
    out.append('<g class="polygons" fill="none" stroke="#333" stroke-width="1">')
    for p, poly in enumerate(net.polygons):
        d = " ".join(f"{_f(a)},{_f(b)}" for a, b in (pt(p, float(v.x), float(v.y)) for v in poly))
        out.append(f'<polygon points="{d}"/>')
    out.append("</g>")
    out.append('<g class="edges" stroke-width="3">')
    for g, (h, k) in enumerate(net.edge_pairs()):
        color = EDGE_COLORS[g % len(EDGE_COLORS)]
        for p, e in (h, k):
            a, b = net.edge(p, e)
            x1, y1 = pt(p, float(a.x), float(a.y))
            x2, y2 = pt(p, float(b.x), float(b.y))
            out.append(f'<line class="pair{g}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" stroke="{color}"/>')
    out.append("</g>")
    if decomposition is not None:
        out.append('<g class="saddle-connections" stroke="#000" stroke-width="1" stroke-dasharray="4 2">')
        for sc in decomposition.saddle_connections:
            for seg in sc.segments:
                x1, y1 = pt(seg.polygon, float(seg.start.x), float(seg.start.y))
                x2, y2 = pt(seg.polygon, float(seg.end.x), float(seg.end.y))
                out.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
        out.append("</g>")
    out.append('<g class="vertices">')
    for s in net.vertex_cycles():
        for p, i in s.corners:
            v = net.polygons[p][i]
            x, y = pt(p, float(v.x), float(v.y))
            if s.turns > 1:
                out.append(f'<circle class="singularity" cx="{_f(x)}" cy="{_f(y)}" r="4" fill="#000"/>')
            else:
                out.append(f'<circle class="marked" cx="{_f(x)}" cy="{_f(y)}" r="3" fill="white" stroke="#000"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
