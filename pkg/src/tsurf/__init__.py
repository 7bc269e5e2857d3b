"""Exact computations on translation surfaces presented by polygon nets."""

from .catalog import CATALOG, l_origami, l_shaped, regular_octagon, square_tiled, square_torus, strange_surface
from .covering import BranchedCovering, Lattice2, NotALattice, build_torus_cover, classify, periodic_holonomy_module
from .exactnum import QQ, FieldElement, FieldSpec, field_make, rational_dependence
from .flow import (
    CylinderDecomposition,
    Direction,
    Inconclusive,
    LengthSq,
    core_curve_class,
    cylinder_decomposition,
    enumerate_directions,
    is_purely_periodic_direction,
    trace_separatrix,
)
from .invariants import Bivector, is_j_simple, j_polygon, j_surface, phi, wedge
from .surface import PolygonNet, Vec2, apply_matrix, area, load_net, parse_net, serialize_net, stratum, subdivide
from .topology import holonomy, holonomy_map, net_homology, subgroup_rank_index

__version__ = "0.1.0"
