#!/usr/bin/env python3
"""Right-angled hexagons, their inscribed tangent curves, and signed gaps.

Walks through the basic geometric layer: solving a hexagon from its three
edge sides, developing it on the hyperboloid, finding the inscribed tangent
circle, and reading off the signed tangent gaps that drive everything else.
Writes a Poincare-disk picture to hexagons.png when matplotlib is available.
"""

import numpy as np

from hyparc import hypgeom as hg

np.set_printoptions(precision=7, suppress=True)

# --- the regular right-angled hexagon -----------------------------------
# Edge sides acosh(2) give arc sides acosh(2) as well: fully regular.
r = float(np.arccosh(2.0))
print("regular hexagon, edge sides all", round(r, 7))
print("  arc sides:", hg.solve_hexagon(r, r, r))

hexagon = hg.develop_hexagon(r, r, r)
print("  re-measured edges:", hexagon.measured_edge_lengths())

circle = hg.incircle(hexagon)
print("  incircle kind:", circle.kind, " radius:", round(circle.radius, 7))
print("  (sinh of the radius is exactly 1 for the regular hexagon)")
for i in range(3):
    print(f"  signed gap {i}: {hg.signed_tangent_gap(hexagon, i, circle):+.7f}")

# --- the three sign cases ------------------------------------------------
# The gap at arc i equals (a_i + a_{i+1} - a_{i+2}) / 2.  Choosing the arcs
# directly (the hexagon relation is an involution) pins each sign case.
print("\nthree sign cases, arcs (t, t, c*t) with t = 0.8:")
for c, label in [(1.0, "all positive"), (2.0, "zero gap"), (2.5, "negative gap")]:
    t = 0.8
    edges = hg.solve_hexagon(t, t, c * t)
    hx = hg.develop_hexagon(*edges)
    circ = hg.incircle(hx)
    gaps = [hg.signed_tangent_gap(hx, i, circ) for i in range(3)]
    print(f"  c={c}: {label:13s} gaps: {np.array(gaps)}")

# --- stretched hexagons: the tangent curve need not be a circle ----------
stretched = hg.develop_hexagon(0.42, 3.24, 0.40)
curve = hg.incircle(stretched)
print("\nstretched hexagon (0.42, 3.24, 0.40):")
print("  tangent curve kind:", curve.kind)
print("  equal distance from core to all three arc geodesics:", round(curve.radius, 7))
gaps = [hg.signed_tangent_gap(stretched, i, curve) for i in range(3)]
arcs = stretched.arc_lengths
law = [(arcs[i] + arcs[(i + 1) % 3] - arcs[(i + 2) % 3]) / 2 for i in range(3)]
print("  gaps:        ", np.array(gaps))
print("  (a+b-c)/2:   ", np.array(law))

# --- picture --------------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the picture")
else:
    def poincare(p):
        p = np.asarray(p, dtype=float)
        return p[:2] / (1.0 + p[2])

    def geodesic_arc(p, q, steps=40):
        p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
        ts = np.linspace(0.0, 1.0, steps)
        d = hg.point_distance(p, q)
        if d == 0:
            return np.array([poincare(p)] * steps)
        u = hg.direction(p, q)
        pts = [np.cosh(t * d) * p + np.sinh(t * d) * u for t in ts]
        return np.array([poincare(x) for x in pts])

    fig, axes = plt.subplots(1, 2, figsize=(10, 5))
    for ax, (hx, circ, title) in zip(
        axes,
        [
            (hexagon, circle, "regular"),
            (stretched, hg.incircle(stretched), "stretched (hypercycle)"),
        ],
    ):
        verts = hx.vertices.astype(float)
        for i in range(6):
            seg = geodesic_arc(verts[i], verts[(i + 1) % 6])
            ax.plot(seg[:, 0], seg[:, 1], "k-", lw=1.2)
        for x in circ.tangent_points:
            ax.plot(*poincare(x), "ro", ms=4)
        if circ.kind == "circle":
            center = poincare(circ.center)
            ax.plot(*center, "r+", ms=8)
        ax.add_patch(plt.Circle((0, 0), 1.0, fill=False, color="0.7", ls="--"))
        ax.set_aspect("equal")
        ax.set_xlim(-1.05, 1.05)
        ax.set_ylim(-1.05, 1.05)
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig("hexagons.png", dpi=130)
    print("\nwrote hexagons.png")
