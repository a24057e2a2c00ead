"""Hyperbolic metrics as edge-length vectors and their boundary coordinates.

A metric on an ideal triangulation assigns a positive geodesic length to
every edge (the arcs orthogonal to the boundary).  Each hexagon is then
determined by its three slot lengths, and every edge e carries the
coordinate

    psi_h(e) = F(s, h) + F(s', h),   s = (a + b - c) / 2,

where a, b are the boundary arcs adjacent to e and c the arc facing e in
one incident hexagon (s' likewise in the other), and F(t, h) is the
integral of cosh^h from 0 to t.  The half-term s equals the signed
tangent gap of the hexagon's inscribed tangent curve at e.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import hypgeom
from .errors import DomainError, NumericalFailure, SelfGluedEdge

_CLOSED_FORMS = {
    0.0: lambda t: t,
    1.0: np.sinh,
    2.0: lambda t: 0.5 * (t + np.sinh(t) * np.cosh(t)),
}


def integrand_weight(t, h):
    """cosh(t) ** h, the derivative of F in t."""
    return np.cosh(t) ** h


def F(t, h, method="auto"):
    """Integral of cosh^h over [0, t] (odd and strictly increasing in t).

    h must be nonnegative.  h in {0, 1, 2} uses closed forms unless
    method="quadrature" forces adaptive quadrature (relative tolerance
    1e-12); method="closed" requires a closed form.
    """
    if h < 0:
        raise DomainError(f"h must be nonnegative, got {h}")
    t = float(t)
    if not np.isfinite(t):
        raise DomainError(f"t must be finite, got {t}")
    key = float(h)
    if method != "quadrature" and key in _CLOSED_FORMS:
        return float(_CLOSED_FORMS[key](t))
    if method == "closed":
        raise DomainError(f"no closed form for h={h}")
    if t == 0.0:
        return 0.0
    value, _ = integrate.quad(
        lambda u: np.cosh(u) ** h, 0.0, t, epsabs=1e-15, epsrel=1e-13, limit=200
    )
    return float(value)


def validate_lengths(tri, lengths):
    lengths = np.asarray(lengths, dtype=float)
    if lengths.shape != (tri.edge_count,):
        raise DomainError(
            f"expected {tri.edge_count} edge lengths, got shape {lengths.shape}"
        )
    if not np.all(np.isfinite(lengths)) or not np.all(lengths > 0.0):
        raise DomainError("edge lengths must be positive and finite")
    return lengths


def hexagon_slot_lengths(tri, lengths, hexagon):
    return np.array([lengths[tri.edge_at(hexagon, s)] for s in range(3)])


def develop_hexagon_of(tri, lengths, hexagon):
    """Canonical development of one hexagon; slot k carries edge length x_k,
    so the arc facing slot k is the developed hexagon's arc side k and the
    slot's segment is its edge side k."""
    x = hexagon_slot_lengths(tri, lengths, hexagon)
    return hypgeom.develop_hexagon(*x)


def boundary_arcs(tri, lengths):
    """Boundary arc lengths, shaped (hexagons, 3) with the surface arc
    convention: arcs[h][j] follows slot j counterclockwise."""
    lengths = validate_lengths(tri, lengths)
    arcs = np.empty((tri.hexagon_count, 3))
    for h in range(tri.hexagon_count):
        x = hexagon_slot_lengths(tri, lengths, h)
        out = hypgeom.solve_hexagon(*x)
        for j in range(3):
            arcs[h][j] = out[(j + 2) % 3]
    return arcs


def boundary_lengths(tri, lengths, components=None):
    """Total boundary length per component (corner-trace order)."""
    from .surface import boundary_components

    arcs = boundary_arcs(tri, lengths)
    comps = components if components is not None else boundary_components(tri)
    return np.array([sum(arcs[h][j] for h, j in comp) for comp in comps])


def half_terms(tri, lengths):
    """Per (hexagon, slot) the quantity (a + b - c) / 2 at that slot."""
    lengths = validate_lengths(tri, lengths)
    halves = np.empty((tri.hexagon_count, 3))
    for h in range(tri.hexagon_count):
        x = hexagon_slot_lengths(tri, lengths, h)
        out = hypgeom.solve_hexagon(*x)
        for k in range(3):
            halves[h][k] = 0.5 * (out[(k + 1) % 3] + out[(k + 2) % 3] - out[k])
    return halves


@dataclass(frozen=True)
class PsiVector:
    """Edge coordinates for one h, with the per-side half-terms that built
    them (halves[e] holds s and s' in edge-incidence order)."""

    h: float
    values: np.ndarray
    halves: np.ndarray

    def to_json_dict(self):
        return {"h": self.h, "values": [float(v) for v in self.values]}


def psi(tri, lengths, h):
    """The coordinate vector of a metric for a given h >= 0."""
    if h < 0:
        raise DomainError(f"h must be nonnegative, got {h}")
    halves_hex = half_terms(tri, lengths)
    values = np.empty(tri.edge_count)
    halves = np.empty((tri.edge_count, 2))
    for e, (a, b) in enumerate(tri.edges):
        s1 = halves_hex[a[0]][a[1]]
        s2 = halves_hex[b[0]][b[1]]
        halves[e] = (s1, s2)
        values[e] = F(s1, h) + F(s2, h)
    return PsiVector(h=float(h), values=values, halves=halves)


def _arc_derivatives(x, out):
    """d out_i / d x_j for the hexagon relation, as a 3x3 array."""
    sh_x, ch_out = np.sinh(x), np.cosh(out)
    sh_out = np.sinh(out)
    deriv = np.empty((3, 3))
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        denom = sh_out[i] * sh_x[j] * sh_x[k]
        deriv[i][i] = sh_x[i] / denom
        deriv[i][j] = -sh_x[i] * ch_out[k] / denom
        deriv[i][k] = -sh_x[i] * ch_out[j] / denom
    return deriv


def psi_jacobian(tri, lengths, h):
    """Derivative of psi with respect to the edge lengths, shape (E, E).

    Entry (e, e') is nonzero only when e and e' share a hexagon.
    """
    if h < 0:
        raise DomainError(f"h must be nonnegative, got {h}")
    lengths = validate_lengths(tri, lengths)
    jac = np.zeros((tri.edge_count, tri.edge_count))
    for hexagon in range(tri.hexagon_count):
        slot_edges = tri.hexagon_slots(hexagon)
        x = np.array([lengths[e] for e in slot_edges])
        out = hypgeom.solve_hexagon(*x)
        d_out = _arc_derivatives(x, out)
        for k in range(3):
            s = 0.5 * (out[(k + 1) % 3] + out[(k + 2) % 3] - out[k])
            weight = integrand_weight(s, h)
            ds = 0.5 * (d_out[(k + 1) % 3] + d_out[(k + 2) % 3] - d_out[k])
            e = slot_edges[k]
            for j in range(3):
                jac[e][slot_edges[j]] += weight * ds[j]
    return jac


def flip_geometric(tri, lengths, edge):
    """Flip `edge` and compute the new edge's geodesic length.

    The two incident hexagons are developed into a common chart (the glued
    copy is carried across by the orientation-preserving isometry matching
    the shared edge with reversed direction).  The new length is the
    distance between the two arc-side geodesics facing the edge, which are
    opposite sides of the developed right-angled octagon.  All other edge
    lengths are unchanged.
    """
    from .surface import combinatorial_flip

    lengths = validate_lengths(tri, lengths)
    (h1, k1), (h2, k2) = tri.edges[edge]
    if h1 == h2:
        raise SelfGluedEdge(f"edge {edge} has both sides in hexagon {h1}")

    # Extended precision throughout: the carried-over normals involve
    # cosh(diameter)-sized coordinates whose products cancel.
    hex1 = develop_hexagon_of(tri, lengths, h1)
    hex2 = develop_hexagon_of(tri, lengths, h2)
    p1, q1 = hex1.edge_segment(k1)
    p2, q2 = hex2.edge_segment(k2)
    carry = hypgeom.isometry_taking_segment(p2, q2, q1, p1)

    g_facing_1 = hex1.arc_normals[k1 % 3]
    g_facing_2 = carry @ hex2.arc_normals[k2 % 3]
    result = hypgeom.geodesic_distance(g_facing_1, g_facing_2)
    if result is None:
        raise NumericalFailure(
            f"facing arc geodesics of edge {edge} do not stay disjoint "
            f"(inner product within [-1, 1])"
        )
    new_length, _, _ = result

    flipped = combinatorial_flip(tri, edge)
    new_lengths = lengths.copy()
    new_lengths[edge] = new_length
    return flipped, new_lengths
