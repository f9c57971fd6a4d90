"""Exact lattice-polygon geometry and the lattice-point addition map."""

from .decomp import (
    LatticeSimplex3,
    SumsetReport,
    decompose,
    howard_check,
    sumset_check,
    verify_3d_counterexample,
    verify_reformulated,
)
from .fans import NormalFan2D, coarsens, edge_with_normal, is_smooth, normal_fan
from .geometry import (
    COORD_BOUND,
    CoordinateOverflowError,
    Edge,
    GeometryError,
    LatticePoint,
    LatticePolygon,
    LatticeVector,
    PolygonFormatError,
    area2,
    boundary_count,
    convex_hull,
    dilate,
    lattice_point_count,
    lattice_points,
    lattice_width,
    minkowski_sum,
    negate,
    non_vertex_lattice_points,
    parse_polygon,
    segment,
    translate,
)
from .intersect import (
    Provenance,
    QuadCertificate,
    RationalPolygon,
    classify_intersection,
    intersect,
    rational_polygon_lattice_points,
)

__version__ = "0.1.0"
