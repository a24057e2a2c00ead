#!/usr/bin/env python3
"""Bundled surfaces, their invariants, and the boundary-arc coordinates.

Shows the combinatorial layer (ideal triangulations as glued hexagons,
boundary tracing, edge cycles) and the coordinate layer (arc lengths, the
psi vector for several h, and its analytic Jacobian)."""

import numpy as np

from hyparc import catalog, metric, surface
from hyparc.verify import sample_metric

np.set_printoptions(precision=6, suppress=True)

# --- the four bundled surfaces -------------------------------------------
for name, build in catalog.BUNDLED.items():
    tri = build()
    inv = surface.surface_invariants(tri)
    cycles = surface.enumerate_edge_cycles(tri)
    print(
        f"{name:24s} hexagons={inv.hexagon_count} edges={inv.edge_count} "
        f"chi={inv.chi} genus={inv.genus} boundary={inv.boundary_count} "
        f"edge cycles={len(cycles)}"
    )

# --- a metric and its coordinates ----------------------------------------
tri = catalog.one_holed_torus()
print("\none-holed torus, regular metric (all lengths acosh 2):")
lengths = np.full(3, np.arccosh(2.0))
print("  boundary arcs per hexagon:\n", metric.boundary_arcs(tri, lengths))
print("  boundary length:", metric.boundary_lengths(tri, lengths))
for h in (0.0, 0.5, 1.0, 2.0):
    print(f"  psi_{h}: {metric.psi(tri, lengths, h).values}")

# --- a random metric: sign pattern is h-independent ----------------------
lengths = sample_metric(tri, seed=12)
print("\nrandom metric:", lengths)
for h in (0.0, 1.0, 3.5):
    values = metric.psi(tri, lengths, h).values
    print(f"  psi_{h}: {values}   signs: {np.sign(values).astype(int)}")

# --- the Jacobian against finite differences ------------------------------
h = 1.0
jac = metric.psi_jacobian(tri, lengths, h)
step = 1e-5
fd = np.zeros_like(jac)
for j in range(3):
    up, down = lengths.copy(), lengths.copy()
    up[j] += step
    down[j] -= step
    fd[:, j] = (
        metric.psi(tri, up, h).values - metric.psi(tri, down, h).values
    ) / (2 * step)
print("\nanalytic Jacobian:\n", jac)
print("max difference to central differences:", np.abs(jac - fd).max())

# --- combinatorial flips preserve the surface ----------------------------
flipped = surface.combinatorial_flip(tri, 0)
twice = surface.combinatorial_flip(flipped, 0)
print("\nflip edge 0 twice -> isomorphic to the start:",
      surface.isomorphic(twice, tri) is not None)
