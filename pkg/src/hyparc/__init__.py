"""Boundary-arc coordinates for hyperbolic surfaces with geodesic boundary:
hexagon geometry, Delaunay flip decompositions, arc-complex weights, and
numerical inversion of the coordinate map."""

from . import catalog, delaunay, formats, hypgeom, inverse, metric, surface, verify
from .delaunay import ArcComplexPoint, make_delaunay, pi_map, points_match, spine
from .errors import (
    DegenerateCellError,
    DomainError,
    InvalidGluing,
    InvalidTarget,
    NoConvergence,
    NonFillable,
    NonTermination,
    NumericalFailure,
    SelfGluedEdge,
    TooManyCycles,
    UnknownSuite,
)
from .inverse import pi_inverse, polytope_contains, solve_metric
from .metric import F, boundary_arcs, boundary_lengths, psi, psi_jacobian
from .surface import (
    CellDecomposition,
    IdealTriangulation,
    build_triangulation,
    combinatorial_flip,
    delete_edges,
    enumerate_edge_cycles,
    isomorphic,
    surface_invariants,
    triangulate_cells,
)

__version__ = "0.1.0"
