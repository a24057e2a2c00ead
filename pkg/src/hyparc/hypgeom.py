"""Hyperboloid-model primitives and right-angled hexagon geometry.

Points and geodesic normals are length-3 numpy arrays in the quadratic form
``<u, v> = u0*v0 + u1*v1 - u2*v2``.  A point satisfies ``<p, p> = -1`` with
``p[2] > 0``; an oriented geodesic is a unit spacelike normal ``g``
(``<g, g> = 1``) whose positive side is ``<p, g> > 0``.

A right-angled hexagon alternates three "edge" sides (lengths ``x0, x1, x2``)
with three "arc" sides (``a0, a1, a2``), where ``a_i`` is opposite ``x_i``.
Vertices are labeled ``A0, B0, A1, B1, A2, B2`` cyclically, the side ``A_iB_i``
being the arc of length ``a_i`` and the side from ``B_{i+1}`` to ``A_{i+2}``
the edge of length ``x_i`` (indices mod 3).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence, NumericalFailure

_MINKOWSKI_SIGNS = np.array([1.0, 1.0, -1.0])

ACOSH_CLAMP = 1e-12


def mdot(u, v):
    """Minkowski inner product of two vectors (or batches broadcast by numpy)."""
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def mcross(u, v):
    """Minkowski cross product: <mcross(u, v), w> = det(u, v, w) for all w."""
    return _MINKOWSKI_SIGNS * np.cross(u, v)


def safe_acosh(x):
    """arccosh with roundoff clamping: arguments in [1 - 1e-12, 1) are treated
    as 1; anything smaller is a genuine domain failure."""
    if x < 1.0:
        if x < 1.0 - ACOSH_CLAMP:
            raise DomainError(f"acosh argument {x} below 1")
        return 0.0
    return float(np.arccosh(x))


def normalize_point(v):
    """Scale a timelike vector onto the upper hyperboloid sheet."""
    q = mdot(v, v)
    if q >= 0.0:
        raise DomainError("vector is not timelike")
    p = v / np.sqrt(-q)
    return -p if p[2] < 0 else p


def normalize_spacelike(v):
    q = mdot(v, v)
    if q <= 0.0:
        raise DomainError("vector is not spacelike")
    return v / np.sqrt(q)


def is_point(p, tol=1e-12):
    return abs(mdot(p, p) + 1.0) <= tol and p[2] > 0


def is_unit_normal(g, tol=1e-12):
    return abs(mdot(g, g) - 1.0) <= tol


def point_distance(p, q):
    """Hyperbolic distance between two points.

    Evaluates acosh(-<p, q>) through the chord form
    ``2 asinh(sqrt(<p - q, p - q>) / 2)``, which stays accurate for short
    distances between points far from the chart origin.
    """
    d = p.astype(np.longdouble) - q.astype(np.longdouble)
    chord = mdot(d, d)
    if chord < 0.0:
        if chord < -ACOSH_CLAMP:
            raise DomainError(f"inputs are not both points (chord form {chord})")
        chord = 0.0
    return float(2.0 * np.arcsinh(0.5 * np.sqrt(chord)))


def point_geodesic_distance(p, g):
    """Unsigned distance from a point to a geodesic; sinh(d) = |<p, g>|."""
    return float(np.arcsinh(abs(mdot(p, g))))


def side_of(p, g):
    """Signed sinh of the distance from point p to geodesic g (positive on
    the positive side)."""
    return float(mdot(p, g))


def foot_on_geodesic(p, g):
    """Foot of the perpendicular from point p onto geodesic g."""
    s = mdot(p, g)
    return (p - s * g) / np.sqrt(1.0 + s * s)


def geodesic_distance(g, h):
    """Distance between two disjoint geodesics together with the feet of
    their common perpendicular, or None when the geodesics intersect
    (``|<g, h>| <= 1``, which includes coincident geodesics)."""
    c = mdot(g, h)
    if abs(c) <= 1.0:
        return None
    n = normalize_spacelike(mcross(g, h))
    foot_g = normalize_point(mcross(g, n))
    foot_h = normalize_point(mcross(h, n))
    return float(np.arccosh(abs(c))), foot_g, foot_h


def direction(p, q):
    """Unit tangent at p pointing toward q along the geodesic through both."""
    c = mdot(p, q)
    s = np.sqrt(c * c - 1.0)
    if s == 0.0:
        raise DomainError("direction between coincident points")
    return (q + c * p) / s


def walk(p, u, length):
    """Travel `length` along the geodesic from p with unit tangent u.

    Returns the endpoint and the transported tangent there.
    """
    ch, sh = np.cosh(length), np.sinh(length)
    return ch * p + sh * u, sh * p + ch * u


def turn_left(p, u):
    """Rotate tangent u at p by +90 degrees."""
    return mcross(p, u)


def frame_at(p, toward):
    """Positively oriented Lorentz frame (u, p x u, p) at p aimed at `toward`."""
    u = direction(p, toward)
    return np.column_stack([u, mcross(p, u), p])


def isometry_taking_segment(p_src, q_src, p_dst, q_dst):
    """Orientation-preserving isometry with p_src -> p_dst that aims the
    tangent toward q_src at the tangent toward q_dst."""
    f_src = frame_at(p_src, q_src)
    f_dst = frame_at(p_dst, q_dst)
    # Lorentz inverse: F^{-1} = J F^T J.
    inv = _MINKOWSKI_SIGNS[:, None] * f_src.T * _MINKOWSKI_SIGNS[None, :]
    return f_dst @ inv


def random_isometry(rng):
    """Random orientation-preserving isometry (rotation, boost, rotation)."""

    def rotation(theta):
        c, s = np.cos(theta), np.sin(theta)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

    def boost(t):
        ch, sh = np.cosh(t), np.sinh(t)
        return np.array([[ch, 0.0, sh], [0.0, 1.0, 0.0], [sh, 0.0, ch]])

    return (
        rotation(rng.uniform(0.0, 2.0 * np.pi))
        @ boost(rng.uniform(-1.5, 1.5))
        @ rotation(rng.uniform(0.0, 2.0 * np.pi))
    )


def _solve_hexagon_ld(x):
    """solve_hexagon in extended precision (development needs arc lengths
    accurate beyond double: closure error grows like cosh(perimeter))."""
    ch, sh = np.cosh(x), np.sinh(x)
    out = np.empty(3, dtype=np.longdouble)
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        arg = (ch[i] + ch[j] * ch[k]) / (sh[j] * sh[k])
        if arg < 1.0:
            if arg < 1.0 - ACOSH_CLAMP:
                raise DomainError(f"hexagon relation violated, acosh arg {arg}")
            arg = np.longdouble(1.0)
        out[i] = np.arccosh(arg)
    return out


def solve_hexagon(x0, x1, x2):
    """Arc sides of the right-angled hexagon with edge sides (x0, x1, x2).

    cosh a_i = (cosh x_i + cosh x_{i+1} cosh x_{i+2})
               / (sinh x_{i+1} sinh x_{i+2}),
    with a_i the arc side opposite x_i.  The relation is an involution: the
    same formula applied to (a0, a1, a2) returns (x0, x1, x2).
    """
    x = np.asarray([x0, x1, x2], dtype=float)
    if not np.all(x > 0.0) or not np.all(np.isfinite(x)):
        raise DomainError(f"hexagon edge sides must be positive, got {x}")
    return _solve_hexagon_ld(x.astype(np.longdouble)).astype(float)


@dataclass(frozen=True)
class HexagonGeometry:
    """A right-angled hexagon developed in the hyperboloid model.

    vertices holds A0, B0, A1, B1, A2, B2 in counterclockwise walk order;
    arc_normals[i] / edge_normals[i] are the oriented geodesics carrying
    side A_iB_i / the edge side of length x_i, interior on the positive side.
    """

    edge_lengths: np.ndarray
    arc_lengths: np.ndarray
    vertices: np.ndarray
    arc_normals: np.ndarray
    edge_normals: np.ndarray

    def vertex_a(self, i):
        return self.vertices[2 * (i % 3)]

    def vertex_b(self, i):
        return self.vertices[2 * (i % 3) + 1]

    def edge_segment(self, k):
        """Endpoints (B_{k+1}, A_{k+2}) of the edge side of length x_k, in
        counterclockwise walk order."""
        return self.vertex_b(k + 1), self.vertex_a(k + 2)

    def measured_edge_lengths(self):
        return np.array(
            [point_distance(*self.edge_segment(k)) for k in range(3)]
        )

    def measured_arc_lengths(self):
        return np.array(
            [point_distance(self.vertex_a(i), self.vertex_b(i)) for i in range(3)]
        )

    def transformed(self, m):
        """The same hexagon moved by a Lorentz matrix m."""
        return HexagonGeometry(
            edge_lengths=self.edge_lengths,
            arc_lengths=self.arc_lengths,
            vertices=self.vertices @ m.T,
            arc_normals=self.arc_normals @ m.T,
            edge_normals=self.edge_normals @ m.T,
        )


def develop_hexagon(x0, x1, x2):
    """Place the hexagon with edge sides (x0, x1, x2) in canonical position.

    A0 sits at (0, 0, 1) with the arc side a0 leaving along the x-axis, so
    the edge side arriving at A0 lies on the geodesic {x = 0}.  The walk
    turns left at every vertex, so the interior is on the positive side of
    every recorded side normal.
    """
    x = np.array([x0, x1, x2], dtype=float)
    if not np.all(x > 0.0) or not np.all(np.isfinite(x)):
        raise DomainError(f"hexagon edge sides must be positive, got {x}")

    # The walk runs in extended precision with a full orthonormal frame
    # (position p, direction u, side normal w = p x u): translation leaves
    # w untouched and the right-angle turn is exactly (u, w) <- (w, -u),
    # so no cross products are taken at far-from-origin vertices (their
    # cancellation would cost a factor cosh(diameter) in accuracy).
    x_ld = x.astype(np.longdouble)
    arcs = _solve_hexagon_ld(x_ld)
    walk_lengths = [arcs[0], x_ld[2], arcs[1], x_ld[0], arcs[2], x_ld[1]]

    p = np.array([0.0, 0.0, 1.0], dtype=np.longdouble)
    u = np.array([1.0, 0.0, 0.0], dtype=np.longdouble)
    w = np.array([0.0, 1.0, 0.0], dtype=np.longdouble)
    vertices = [p]
    normals = []
    for length in walk_lengths:
        normals.append(w)
        p, u = walk(p, u, length)
        u, w = w, -u
        vertices.append(p)

    vertices = np.array(vertices[:6])
    normals = np.array(normals)
    return HexagonGeometry(
        edge_lengths=x,
        arc_lengths=arcs.astype(float),
        vertices=vertices,
        arc_normals=normals[[0, 2, 4]],
        edge_normals=normals[[3, 5, 1]],
    )


@dataclass(frozen=True)
class Incircle:
    """Tangent curve of the three arc-side geodesics of a hexagon.

    For kind "circle" the center is a point (timelike) and radius its common
    distance to the three geodesics.  Sufficiently stretched hexagons admit
    no equidistant point; the tangent curve is then a hypercycle, center
    holds the spacelike axis of its core geodesic and radius the common
    distance from that core to the three arc geodesics.  Tangent points are
    genuine points in both cases and the tangent-gap identities are
    unaffected.
    """

    center: np.ndarray
    radius: float
    tangent_points: np.ndarray
    kind: str = "circle"

    def distance_to(self, g):
        """Distance from the center (point or core geodesic) to geodesic g."""
        if self.kind == "circle":
            return float(np.arcsinh(abs(mdot(self.center, g))))
        return safe_acosh(abs(mdot(self.center, g)))


def _hexagon_centroid(hexagon):
    return normalize_point(hexagon.vertices.sum(axis=0))


def _polish_equidistant(g, guess, max_steps):
    """Damped Newton on two chart coordinates minimizing the spread of the
    three signed distances to the geodesics g, started at `guess`."""
    w = guess[:2].copy()

    def state(w):
        z = np.sqrt(1.0 + w[0] ** 2 + w[1] ** 2)
        point = np.array([w[0], w[1], z])
        chart_jac = np.array([[1.0, 0.0], [0.0, 1.0], [w[0] / z, w[1] / z]])
        s = g @ (_MINKOWSKI_SIGNS * point)  # sinh of signed distances
        dist = np.arcsinh(s)
        res = np.array([dist[0] - dist[2], dist[1] - dist[2]])
        dsdw = g @ (_MINKOWSKI_SIGNS[:, None] * chart_jac)
        ddist = dsdw / np.sqrt(1.0 + s * s)[:, None]
        jac = np.array([ddist[0] - ddist[2], ddist[1] - ddist[2]])
        return point, s, res, jac

    point, s, res, jac = state(w)
    for _ in range(max_steps):
        if np.max(np.abs(res)) <= 1e-13:
            break
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(f"singular incircle system: {exc}") from exc
        lam = 1.0
        norm = np.linalg.norm(res)
        while True:
            w_new = w + lam * step
            point_new, s_new, res_new, jac_new = state(w_new)
            if np.linalg.norm(res_new) < norm:
                break
            lam *= 0.5
            if lam <= 1e-10:
                break
        if np.linalg.norm(res_new) >= norm:
            # Line search at the roundoff floor: accept if the distance
            # spread is already negligible, otherwise report.
            if np.max(np.abs(res)) <= 1e-11:
                break
            raise NoConvergence(f"incircle line search stalled, spread {res}")
        w, point, s, res, jac = w_new, point_new, s_new, res_new, jac_new
    else:
        raise NoConvergence(
            f"incircle iteration did not reach tolerance, spread {res}"
        )
    return point, s


def incircle(hexagon, max_steps=100):
    """Tangent curve of the three arc-side geodesics of a developed hexagon.

    The equal-signed-distance conditions ``<O, g_i - g_j> = 0`` are linear,
    so the center direction is the Minkowski cross product of two of them.
    When it is timelike the tangent curve is a circle and a damped Newton
    iteration on two chart coordinates polishes the center to machine
    precision; when it is spacelike the tangent curve is a hypercycle and
    the tangent points are the feet of the common perpendiculars between
    its core geodesic and the arc geodesics.  A numerically lightlike
    direction (horocyclic tangent curve) is reported as NoConvergence.
    """
    g = hexagon.arc_normals.astype(float)

    cross = mcross(g[0] - g[1], g[1] - g[2])
    cross_norm = mdot(cross, cross)
    scale = float(np.sum(cross * cross))
    if scale == 0.0 or abs(cross_norm) < 1e-13 * scale:
        raise NoConvergence(
            "tangent curve is numerically horocyclic; no stable center"
        )

    if cross_norm < 0.0:
        point, s = _polish_equidistant(g, normalize_point(cross), max_steps)
        radius = float(np.mean(np.arcsinh(s)))
        if radius <= 0.0:
            raise NumericalFailure(
                "equidistant point lies on the outer side of the arc geodesics"
            )
        tangent_points = np.array([foot_on_geodesic(point, gi) for gi in g])
        return Incircle(
            center=point, radius=radius, tangent_points=tangent_points,
            kind="circle",
        )

    core = cross / np.sqrt(cross_norm)
    vals = np.array([mdot(core, gi) for gi in g])
    if np.mean(vals) < 0.0:
        core, vals = -core, -vals
    if np.any(vals <= 1.0):
        raise NumericalFailure(
            "hypercycle core meets an arc geodesic; tangency is impossible"
        )
    tangent_points = []
    for gi in g:
        perp = normalize_spacelike(mcross(core, gi))
        tangent_points.append(normalize_point(mcross(gi, perp)))
    radius = float(np.mean([safe_acosh(v) for v in vals]))
    return Incircle(
        center=core, radius=radius, tangent_points=np.array(tangent_points),
        kind="hypercycle",
    )


def signed_tangent_gap(hexagon, i, circle=None):
    """Signed distance from tangent point X_i to vertex B_i.

    Positive when the incircle center and the hexagon lie on the same side
    of the edge geodesic through B_i and A_{i+1}, zero when the center is on
    it, negative otherwise.  Equals (a_i + a_{i+1} - a_{i+2}) / 2.
    """
    if i not in (0, 1, 2):
        raise DomainError(f"arc index must be 0, 1 or 2, got {i}")
    if circle is None:
        circle = incircle(hexagon)
    # The edge side following arc i carries length x_{i+2}; X_i lies on the
    # arc geodesic, which meets that edge geodesic orthogonally at B_i, so
    # the signed distance to the edge geodesic is the signed gap itself.
    n_edge = hexagon.edge_normals[(i + 2) % 3]
    return float(np.arcsinh(mdot(circle.tangent_points[i], n_edge)))
