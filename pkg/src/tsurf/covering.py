"""Lattices of holonomies, torus branched coverings and the classification pipeline."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyInput, HolonomyNotInLattice, NonIntegerDegree
from .exactnum import FieldElement, FieldSpec, rref
from .flow import (
    CylinderDecomposition,
    Direction,
    Inconclusive,
    _squared,
    _tri,
    cylinder_decomposition,
    enumerate_directions,
)
from .invariants import QBasis
from .surface import PolygonNet, Vec2, area, cross, dot, stratum
from .topology import HolonomyMap, HomologyClass, holonomy, holonomy_map, net_homology, subgroup_rank_index

# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True, eq=False)
class Lattice2:
    g1: Vec2
    g2: Vec2

    def __post_init__(self):
        if cross(self.g1, self.g2).is_zero():
            raise ValueError("lattice generators are parallel")

    @property
    def covolume(self) -> FieldElement:
        return abs(cross(self.g1, self.g2))

    @classmethod
    def standard(cls, field: FieldSpec) -> Lattice2:
        return cls(Vec2.of(field, 1, 0), Vec2.of(field, 0, 1))

    def coefficients(self, v: Vec2) -> tuple[FieldElement, FieldElement]:
        det = cross(self.g1, self.g2)
        return cross(v, self.g2) / det, cross(self.g1, v) / det

    def contains(self, v: Vec2) -> bool:
        a, b = self.coefficients(v)
        return all(c.is_rational() and c.to_fraction().denominator == 1 for c in (a, b))

    def reduce(self, v: Vec2) -> tuple[tuple[FieldElement, FieldElement], Vec2]:
        """Coefficients in ``[0, 1)`` and the representative of ``v`` mod the lattice."""
        a, b = self.coefficients(v)
        a = a - a.floor()
        b = b - b.floor()
        return (a, b), self.g1 * a + self.g2 * b

    def __eq__(self, o):
        if not isinstance(o, Lattice2):
            return False
        return all(o.contains(g) for g in (self.g1, self.g2)) and all(self.contains(g) for g in (o.g1, o.g2))

    def __hash__(self):
        return hash(self.covolume)

    def __repr__(self):
        return f"Lattice2({self.g1}, {self.g2})"


@dataclass(frozen=True)
class NotALattice:
    """``rank`` is the Q-dimension of the span; ``kind`` is parallel, dense-in-line or dense."""

    rank: int
    kind: str


def _round(x: FieldElement) -> int:
    return (x + Fraction(1, 2)).floor()


def _hnf2(rows: list[list[int]]) -> list[list[int]]:
    """Two generators of the Z-span of integer vectors in Z^2 of rank 2 (row echelon form)."""
    # echelon form by unimodular row operations (Euclid on each column)
    rows = [list(r) for r in rows if any(r)]
    out = []
    for col in range(2):
        while True:
            nz = [r for r in rows if r[col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r[0] -= q * piv[0]
                r[1] -= q * piv[1]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col]]
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                piv[0], piv[1] = -piv[0], -piv[1]
            out.append(piv)
            rows = [r for r in rows if r is not piv]
    return out


def _vec_key(v: Vec2):
    return (v.norm2(), v.y, v.x)


def _gauss_reduce(g1: Vec2, g2: Vec2) -> tuple[Vec2, Vec2]:
    """Canonical reduced basis: shortest vectors first, ties broken by coordinates."""
    if g2.norm2() < g1.norm2():
        g1, g2 = g2, g1
    while True:
        mu = _round(dot(g1, g2) / g1.norm2())
        if mu:
            g2 = g2 - g1 * mu
        if g2.norm2() < g1.norm2():
            g1, g2 = g2, g1
        else:
            break
    # the shortest vectors lie among +-g1, +-g2, +-(g1 +- g2)
    cands = []
    for a, b in ((1, 0), (0, 1), (1, 1), (1, -1)):
        c = g1 * a + g2 * b
        partner = g2 if a else g1
        if c.x.sign() < 0 or (c.x.is_zero() and c.y.sign() < 0):
            c = -c
        cands.append((_vec_key(c), c, partner))
    _, h1, h2 = min(cands, key=lambda k: k[0])
    if cross(h1, h2).sign() < 0:
        h2 = -h2
    mu = _round(dot(h1, h2) / h1.norm2())
    h2 = h2 - h1 * mu
    # the second basis vector is h2 + k h1 for some k in {-1, 0, 1}
    h2 = min((h2 + h1 * k for k in (-1, 0, 1)), key=_vec_key)
    return h1, h2


def lattice_from_vectors(vectors: Sequence[Vec2]) -> Lattice2 | NotALattice:
    """Z-module generated by ``vectors``, if it is a lattice of the plane."""
    if not vectors:
        raise EmptyInput("no vectors")
    vs = [v for v in vectors if not v.is_zero()]
    if not vs:
        return NotALattice(0, "trivial")
    B = QBasis(vs[0].x.field)
    coords = [list(B.coords(v)) for v in vs]
    _, piv = rref([list(c) for c in coords])
    qrank = len(piv)
    parallel = all(cross(vs[0], v).is_zero() for v in vs)
    if qrank != 2 or parallel:
        if parallel:
            return NotALattice(qrank, "parallel" if qrank == 1 else "dense-in-line")
        return NotALattice(qrank, "dense")
    # a Q-basis of the span made of two of the input vectors
    b1 = vs[0]
    b2 = next(v for v in vs if not cross(b1, v).is_zero())
    det = cross(b1, b2)
    rat = []
    for v in vs:
        a, b = cross(v, b2) / det, cross(b1, v) / det
        rat.append((a.to_fraction(), b.to_fraction()))
    den = 1
    for a, b in rat:
        den = den * a.denominator // math.gcd(den, a.denominator)
        den = den * b.denominator // math.gcd(den, b.denominator)
    ints = [[int(a * den), int(b * den)] for a, b in rat]
    h = _hnf2(ints)
    gens = [b1 * Fraction(r[0], den) + b2 * Fraction(r[1], den) for r in h]
    g1, g2 = _gauss_reduce(*gens)
    return Lattice2(g1, g2)


def periodic_holonomy_module(classes: Sequence[HomologyClass], hm: HolonomyMap) -> Lattice2 | NotALattice:
    if not classes:
        raise EmptyInput("no homology classes")
    return lattice_from_vectors([holonomy(c, hm) for c in classes])


# ---------------------------------------------------------------------------
# coverings


@dataclass(frozen=True)
class BranchPoint:
    vertex: int
    image: Vec2
    ramification: int


@dataclass(frozen=True, eq=False)
class BranchedCovering:
    lattice: Lattice2
    basepoint: tuple[int, int]
    offsets: tuple[Vec2, ...]  # developing map on polygon p: x -> x + offsets[p]
    vertex_images: tuple[Vec2, ...]  # per vertex class, reduced mod lattice
    degree: int
    branch_points: tuple[BranchPoint, ...]

    def develop(self, p: int, x: Vec2) -> Vec2:
        return self.lattice.reduce(x + self.offsets[p])[1]


def _developing_offsets(net: PolygonNet) -> list[Vec2]:
    zero = Vec2(net.field.zero(), net.field.zero())
    offsets: list[Vec2 | None] = [None] * len(net.polygons)
    offsets[0] = zero - net.polygons[0][0]
    todo = [0]
    while todo:
        p = todo.pop(0)
        for e in range(len(net.polygons[p])):
            q, _ = net.pairing[(p, e)]
            if offsets[q] is None:
                offsets[q] = offsets[p] - net.translation(p, e)
                todo.append(q)
    return offsets


def build_torus_cover(net: PolygonNet, lat: Lattice2, basepoint=(0, 0)) -> BranchedCovering:
    """Developing map mod ``lat``; requires ``hol(H_1) <= lat``."""
    if tuple(basepoint) != (0, 0):
        raise ValueError("the basepoint is the first vertex of the first polygon")
    hm = holonomy_map(net)
    for k, v in enumerate(hm.vectors):
        if not lat.contains(v):
            raise HolonomyNotInLattice(f"holonomy {v} of homology basis element {k} is not in {lat}")
    offsets = _developing_offsets(net)
    # every glued pair must develop consistently (implied by the check above)
    for (p, e), (q, f) in net.edge_pairs():
        a = net.polygons[p][e] + offsets[p]
        b = net.polygons[q][(f + 1) % len(net.polygons[q])] + offsets[q]
        if not lat.contains(a - b):
            raise HolonomyNotInLattice(f"edge pair {(p, e)}~{(q, f)} develops inconsistently")
    d = area(net) / lat.covolume
    if not d.is_rational() or d.to_fraction().denominator != 1:
        raise NonIntegerDegree(f"area / covolume = {d} is not an integer")
    images = []
    branch = []
    for vid, s in enumerate(net.vertex_cycles()):
        p, i = s.corners[0]
        img = lat.reduce(net.polygons[p][i] + offsets[p])[1]
        images.append(img)
        if s.turns > 1:
            branch.append(BranchPoint(vid, img, s.turns))
    return BranchedCovering(lat, (0, 0), tuple(offsets), tuple(images), int(d.to_fraction()), tuple(branch))


# ---------------------------------------------------------------------------
# classification


def exact_str(x) -> str:
    """Exact value with a labelled decimal approximation."""
    if isinstance(x, FieldElement):
        if x.is_rational():
            q = x.to_fraction()
            if q.denominator == 1:
                return str(q.numerator)
            return f"{q} ≈ {x.approx(12)}"
        return f"{x} ≈ {x.approx(12)}"
    if isinstance(x, Vec2):
        return f"({exact_str(x.x)}, {exact_str(x.y)})"
    return str(x)


def _thread_count(threads: int | None) -> int:
    n = threads if threads is not None else (os.cpu_count() or 1)
    cap = os.environ.get("FLATSURF_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def decompose_many(net: PolygonNet, directions: Sequence[Direction], cutoff, threads: int | None = None):
    """Decompositions in the given order, computed concurrently."""
    # fill lazily computed caches before sharing the net between threads
    net.vertex_cycles()
    net_homology(net)
    _tri(net)
    n = _thread_count(threads)
    if n == 1 or len(directions) <= 1:
        return [cylinder_decomposition(net, d, cutoff) for d in directions]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(lambda d: cylinder_decomposition(net, d, cutoff), directions))


@dataclass(frozen=True, eq=False)
class ClassificationReport:
    net: PolygonNet
    direction_bound: object
    cutoff: object
    decompositions: tuple
    core_classes: tuple[HomologyClass, ...]
    homology_rank: int
    homology_index: object  # int or math.inf
    lattice: Lattice2 | NotALattice | None
    h1_lattice: Lattice2 | NotALattice
    covering: BranchedCovering | None
    verdicts: dict
    witnesses: tuple[str, ...]

    @property
    def inconclusive(self) -> bool:
        return all(v == "unknown" for v in self.verdicts.values())

    def to_dict(self) -> dict:
        net = self.net
        g = stratum(net).genus
        dirs = []
        for dec in self.decompositions:
            entry = {"direction": str(dec.direction)}
            if isinstance(dec, Inconclusive):
                entry["verdict"] = "inconclusive"
                entry["escaped_separatrices"] = dec.escaped
            else:
                entry["verdict"] = "complete+commensurable" if dec.commensurable else "complete+incommensurable"
            if dec.cylinders:
                entry["cylinders"] = [
                    {
                        "width": exact_str(c.width),
                        "height": exact_str(c.height),
                        "core_class": list(c.core_class.coeffs),
                        "core_holonomy": exact_str(c.core_holonomy),
                    }
                    for c in dec.cylinders
                ]
            dirs.append(entry)
        idx = self.homology_index
        hom = {
            "required_rank": 2 * g,
            "rank": self.homology_rank,
            "index": idx if isinstance(idx, int) else None,
            "verdict": "yes" if isinstance(idx, int) else "unknown at bound",
        }
        out = {
            "surface": {
                "stratum": str(stratum(net)),
                "genus": g,
                "area": exact_str(area(net)),
                "polygons": len(net.polygons),
            },
            "bounds": {"direction_bound": str(self.direction_bound), "cutoff": str(self.cutoff)},
            "directions": dirs,
            "homology_generated_by_periodic_orbits": hom,
            "periodic_lattice": _lattice_dict(self.lattice),
            "homology_holonomy_lattice": _lattice_dict(self.h1_lattice),
            "covering": None,
            "properties": dict(self.verdicts),
            "witnesses": list(self.witnesses),
        }
        cov = self.covering
        if cov is not None:
            out["covering"] = {
                "lattice": _lattice_dict(cov.lattice),
                "degree": cov.degree,
                "basepoint": list(cov.basepoint),
                "branch_points": [
                    {"vertex": b.vertex, "image": exact_str(b.image), "ramification": b.ramification}
                    for b in cov.branch_points
                ],
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"


def _lattice_dict(lat):
    if lat is None:
        return None
    if isinstance(lat, NotALattice):
        return {"lattice": False, "q_rank": lat.rank, "kind": lat.kind}
    return {
        "lattice": True,
        "generators": [exact_str(lat.g1), exact_str(lat.g2)],
        "covolume": exact_str(lat.covolume),
    }


def classify(net: PolygonNet, direction_bound, cutoff, threads: int | None = None) -> ClassificationReport:
    """Bounded evidence for the three equivalent properties.

    Verdicts are ``yes``, ``no`` (with a witness) or ``unknown``.
    """
    _squared(net, direction_bound)
    _squared(net, cutoff)
    directions = enumerate_directions(net, direction_bound)
    decs = decompose_many(net, directions, cutoff, threads)
    H = net_homology(net)
    hm = holonomy_map(net)
    g = stratum(net).genus

    # every cylinder found is a family of periodic orbits, complete direction or not
    core = []
    for dec in decs:
        core.extend(c.core_class for c in dec.cylinders)
    if core:
        rank, index = subgroup_rank_index(core, H.rank)
    else:
        rank, index = 0, math.inf
    lat = periodic_holonomy_module(core, hm) if core else None
    h1_lat = lattice_from_vectors(list(hm.vectors)) if hm.vectors else NotALattice(0, "trivial")

    witnesses = []
    verdicts = {"torus_branched_covering": "unknown", "finite_blocking_property": "unknown", "purely_periodic": "unknown"}
    covering = None
    bad = [dec for dec in decs if isinstance(dec, CylinderDecomposition) and not dec.commensurable]
    if bad:
        for dec in bad:
            witnesses.append(f"direction {dec.direction} decomposes into cylinders with incommensurable widths")
        verdicts = dict.fromkeys(verdicts, "no")
    elif isinstance(h1_lat, NotALattice):
        witnesses.append(f"hol(H_1) is not a lattice (Q-rank {h1_lat.rank}, {h1_lat.kind})")
        verdicts["torus_branched_covering"] = "no"
        if isinstance(index, int):
            verdicts["finite_blocking_property"] = "no"
            verdicts["purely_periodic"] = "no"
    elif isinstance(index, int) and isinstance(lat, Lattice2):
        # prefer the lattice of relative periods: all vertices then develop to
        # the origin, and origamis get their usual cover of degree n over Z^2
        rel = lattice_from_vectors([net.edge_vector(*h) for h, _ in net.edge_pairs()])
        covering = build_torus_cover(net, rel if isinstance(rel, Lattice2) else h1_lat)
        verdicts = dict.fromkeys(verdicts, "yes")
        witnesses.append(f"torus branched covering of degree {covering.degree}")
    if not isinstance(index, int) and g > 0:
        witnesses.append(f"periodic orbits found so far span rank {rank} of {2 * g}")
    return ClassificationReport(
        net,
        direction_bound,
        cutoff,
        tuple(decs),
        tuple(core),
        rank,
        index,
        lat,
        h1_lat,
        covering,
        verdicts,
        tuple(witnesses),
    )
