"""Delaunay decompositions by sign-driven flips and the weight map into
the fillable arc complex.

An edge is locally Delaunay exactly when its h=0 coordinate is nonnegative:
the two half-terms (a + b - c) / 2 are the signed tangent gaps of the
incident hexagons' inscribed circles, so nonnegativity of their sum is the
incircle condition.  Flipping a most-negative edge until none remain yields
the Delaunay triangulation; edges with vanishing coordinate are diagonals
of larger cells and are merged away.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import hypgeom
from .errors import (
    DegenerateCellError,
    DomainError,
    NonFillable,
    NonTermination,
    NumericalFailure,
    SelfGluedEdge,
)
from .metric import (
    develop_hexagon_of,
    flip_geometric,
    psi,
    validate_lengths,
)
from .surface import decomposition_isomorphisms, delete_edges

DEFAULT_TOL = 1e-9
DEFAULT_CAP = 10**4
COINCIDENCE_TOL = 1e-6


@dataclass(frozen=True)
class DelaunayResult:
    triangulation: object
    lengths: np.ndarray
    flips: tuple


def make_delaunay(tri, lengths, cap=DEFAULT_CAP, tol=DEFAULT_TOL):
    """Flip until every edge satisfies psi_0(e) >= -tol.

    Each round flips the edge with the most negative h=0 coordinate (ties
    to the lowest index).  Raises SelfGluedEdge if that edge cannot be
    flipped and NonTermination (with the flip trace) past `cap` flips.
    """
    work_tri, work_len = tri, validate_lengths(tri, lengths)
    flips = []
    while True:
        values = psi(work_tri, work_len, 0.0).values
        worst = int(np.argmin(values))
        if values[worst] >= -tol:
            return DelaunayResult(work_tri, work_len, tuple(flips))
        if len(flips) >= cap:
            raise NonTermination(
                f"no Delaunay triangulation after {cap} flips "
                f"(min psi_0 = {values[worst]})",
                flip_trace=flips,
            )
        if work_tri.is_self_glued(worst):
            raise SelfGluedEdge(
                f"most negative edge {worst} is self-glued and cannot flip"
            )
        work_tri, work_len = flip_geometric(work_tri, work_len, worst)
        flips.append(worst)


def cell_placements(tri, lengths, decomposition):
    """Develop each cell into the canonical chart of its lowest hexagon.

    Returns a list (one entry per cell) of dicts hexagon -> (Lorentz
    placement matrix, canonically developed HexagonGeometry).
    """
    lengths = validate_lengths(tri, lengths)
    developed = {}

    def dev(h):
        if h not in developed:
            developed[h] = develop_hexagon_of(tri, lengths, h)
        return developed[h]

    cells = []
    for cell_id in range(len(decomposition.cells)):
        members = [
            h
            for h in range(tri.hexagon_count)
            if decomposition.cell_of_hexagon[h] == cell_id
        ]
        root = min(members)
        placement = {root: (np.eye(3), dev(root))}
        queue = [root]
        while queue:
            h = queue.pop()
            m_h, hex_h = placement[h]
            for slot in range(3):
                e = tri.edge_at(h, slot)
                if e not in decomposition.deleted:
                    continue
                h2, slot2 = tri.other_end(e, h, slot)
                if h2 in placement:
                    continue
                hex_2 = dev(h2)
                p1, q1 = hex_h.edge_segment(slot)
                p2, q2 = hex_2.edge_segment(slot2)
                carry = hypgeom.isometry_taking_segment(
                    p2, q2, m_h @ q1.astype(float), m_h @ p1.astype(float)
                )
                placement[h2] = (carry, hex_2)
                queue.append(h2)
        cells.append(placement)
    return cells


@dataclass(frozen=True)
class DelaunayCells:
    """Cells of a Delaunay metric with the per-edge weights pi_h.

    pi_values follows the kept edges in ascending edge-index order.  The
    coincidence fields report how far apart the inscribed circles of the
    hexagons merged into one cell were (zero when no cell was merged).
    """

    decomposition: object
    pi_values: np.ndarray
    psi0: np.ndarray
    h: float
    incircles: tuple  # per cell: hypgeom.Incircle in the cell chart
    coincidence_center: float
    coincidence_radius: float


def delaunay_cells(tri, lengths, h, tol=DEFAULT_TOL):
    """Merge vanishing-coordinate edges into cells and weight the rest.

    Edges with |psi_0| <= tol are deleted; they must form a dual forest
    (DegenerateCellError otherwise).  Every kept edge receives the strictly
    positive weight psi_h(e).  Inscribed circles of hexagons merged into a
    cell are checked to coincide.
    """
    lengths = validate_lengths(tri, lengths)
    psi0 = psi(tri, lengths, 0.0).values
    if np.min(psi0) < -tol:
        raise DomainError(
            f"metric is not Delaunay: min psi_0 = {np.min(psi0)} < -{tol}"
        )
    deleted = [e for e in range(tri.edge_count) if abs(psi0[e]) <= tol]
    try:
        decomposition = delete_edges(tri, deleted)
    except NonFillable as exc:
        raise DegenerateCellError(
            f"edges with vanishing coordinate contain a dual cycle: {exc}"
        ) from exc

    values = psi(tri, lengths, h).values
    kept = decomposition.kept
    pi_values = np.array([values[e] for e in kept])
    if kept and np.min(pi_values) <= 0.0:
        raise NumericalFailure(
            "kept edge with nonpositive weight; tolerance too coarse"
        )

    placements = cell_placements(tri, lengths, decomposition)
    incircles = []
    worst_center, worst_radius = 0.0, 0.0
    for placement in placements:
        root = min(placement)
        m_root, hex_root = placement[root]
        circle_root = hypgeom.incircle(hex_root)
        if circle_root.kind != "circle":
            raise NumericalFailure(
                "cell hexagon has no inscribed circle; metric is not Delaunay"
            )
        center_root = m_root @ circle_root.center
        incircles.append(
            hypgeom.Incircle(
                center=center_root,
                radius=circle_root.radius,
                tangent_points=circle_root.tangent_points @ m_root.T,
                kind="circle",
            )
        )
        for hexagon, (m_h, hex_h) in placement.items():
            if hexagon == root:
                continue
            circle = hypgeom.incircle(hex_h)
            if circle.kind != "circle":
                raise NumericalFailure(
                    "cell hexagon has no inscribed circle; metric is not Delaunay"
                )
            center = m_h @ circle.center
            worst_center = max(
                worst_center, hypgeom.point_distance(center, center_root)
            )
            worst_radius = max(worst_radius, abs(circle.radius - circle_root.radius))
    if max(worst_center, worst_radius) > COINCIDENCE_TOL:
        raise DegenerateCellError(
            f"inscribed circles within a cell disagree "
            f"(center {worst_center}, radius {worst_radius})"
        )

    return DelaunayCells(
        decomposition=decomposition,
        pi_values=pi_values,
        psi0=psi0,
        h=float(h),
        incircles=tuple(incircles),
        coincidence_center=worst_center,
        coincidence_radius=worst_radius,
    )


@dataclass(frozen=True)
class ArcComplexPoint:
    """A fillable cell decomposition with normalized positive weights on its
    kept edges (ascending edge-index order) and a total scale."""

    decomposition: object
    weights: np.ndarray
    scale: float
    h: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or len(w) != len(self.decomposition.kept):
            raise DomainError("one weight per kept edge is required")
        if np.any(w <= 0.0):
            raise DomainError("weights must be strictly positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise DomainError(f"weights must sum to 1, got {w.sum()!r}")
        if not (self.scale > 0.0):
            raise DomainError("scale must be positive")
        object.__setattr__(self, "weights", w)

    def to_json_dict(self):
        return {
            "surface": self.decomposition.base.to_json_dict(),
            "kept_edges": list(self.decomposition.kept),
            "weights": [float(w) for w in self.weights],
            "scale": float(self.scale),
            "h": float(self.h),
        }


def pi_map(tri, lengths, h, cap=DEFAULT_CAP, tol=DEFAULT_TOL):
    """Send a metric to its weighted Delaunay decomposition.

    Runs make_delaunay then delaunay_cells; the weights are the normalized
    psi_h values of the kept edges and the scale their sum.  The underlying
    decomposition comes from the h=0 signs alone, so it is the same for
    every h.
    """
    delaunay = make_delaunay(tri, lengths, cap=cap, tol=tol)
    cells = delaunay_cells(delaunay.triangulation, delaunay.lengths, h, tol=tol)
    scale = float(cells.pi_values.sum())
    return ArcComplexPoint(
        decomposition=cells.decomposition,
        weights=cells.pi_values / scale,
        scale=scale,
        h=float(h),
    )


def points_match(point_a, point_b, tol=1e-7):
    """Whether two arc-complex points agree: some isomorphism of the
    decompositions carries the weights onto each other and the scales match.
    All isomorphisms are tried, since a symmetric cell structure admits
    several and the weights single out the right one."""
    if abs(point_a.scale - point_b.scale) > tol:
        return False
    kept_a = list(point_a.decomposition.kept)
    rank_b = {e: i for i, e in enumerate(point_b.decomposition.kept)}
    for _, edge_map in decomposition_isomorphisms(
        point_a.decomposition, point_b.decomposition
    ):
        if all(
            abs(point_a.weights[i] - point_b.weights[rank_b[edge_map[e]]]) <= tol
            for i, e in enumerate(kept_a)
        ):
            return True
    return False


@dataclass(frozen=True)
class Spine:
    """Dual graph of a Delaunay decomposition with its metric data.

    links[i] = (cell, cell', kept edge); gaps[i] = signed tangent gaps
    (alpha, alpha') seen from the edge's two incidences; radii[c] is the
    inscribed-circle radius of cell c.
    """

    cell_count: int
    links: tuple
    radii: tuple
    gaps: tuple

    @property
    def graph_chi(self):
        return self.cell_count - len(self.links)

    def degrees(self):
        deg = [0] * self.cell_count
        for a, b, _ in self.links:
            deg[a] += 1
            deg[b] += 1
        return deg


def spine(tri, lengths, decomposition, cells_result=None):
    """Spine of a Delaunay decomposition: one node per cell with its
    incircle radius, one link per kept edge with its two tangent gaps."""
    lengths = validate_lengths(tri, lengths)
    if cells_result is not None:
        radii = tuple(c.radius for c in cells_result.incircles)
    else:
        radii = []
        for placement in cell_placements(tri, lengths, decomposition):
            root = min(placement)
            circle = hypgeom.incircle(placement[root][1])
            if circle.kind != "circle":
                raise NumericalFailure(
                    "cell hexagon has no inscribed circle; metric is not Delaunay"
                )
            radii.append(circle.radius)
        radii = tuple(radii)

    links, gaps = [], []
    cell_of = decomposition.cell_of_hexagon
    for e in decomposition.kept:
        (h1, k1), (h2, k2) = tri.edges[e]
        links.append((cell_of[h1], cell_of[h2], e))
        pair = []
        for h, k in ((h1, k1), (h2, k2)):
            dev = develop_hexagon_of(tri, lengths, h)
            pair.append(hypgeom.signed_tangent_gap(dev, (k + 1) % 3))
        gaps.append(tuple(pair))
    return Spine(
        cell_count=len(decomposition.cells),
        links=tuple(links),
        radii=radii,
        gaps=tuple(gaps),
    )
