#!/usr/bin/env python3
"""The weight map into the arc complex and its numerical inverse.

pi_map sends a metric to (normalized weights on the Delaunay edges, total
scale); pi_inverse completes a weighted decomposition with zero-coordinate
diagonals and solves for the unique realizing metric.  The two are inverse
to each other, the solvable targets form a region cut out by cycle
inequalities, and midpoints of solvable targets stay solvable."""

import numpy as np

from hyparc import catalog, delaunay, inverse, metric, surface
from hyparc.verify import sample_metric

np.set_printoptions(precision=6, suppress=True)

tri = catalog.genus_two_one_boundary()
lengths = sample_metric(tri, seed=77)
print("genus-2 surface with one boundary, random metric")

point = delaunay.pi_map(tri, lengths, h=1.0)
print("weights:", point.weights)
print("scale:  ", round(point.scale, 6))

back = inverse.pi_inverse(point)
again = delaunay.pi_map(back.triangulation, back.lengths, h=1.0)
print("round trip reproduces the point:", delaunay.points_match(point, again, 1e-7))

# --- membership: every dual cycle needs a positive target sum -------------
torus = catalog.one_holed_torus()
for target in ([1.0, 1.0, -0.5], [1.0, 1.0, -1.0]):
    inside, witness = inverse.polytope_contains(torus, target)
    note = "" if inside else f"  (cycle through edges {witness.edges} fails)"
    print(f"target {target} inside: {inside}{note}")

# --- a point on a cell of lower dimension ---------------------------------
sphere = catalog.four_holed_sphere()
decomposition = surface.delete_edges(sphere, [0])
weights = np.full(5, 0.2)
point = delaunay.ArcComplexPoint(decomposition, weights, scale=4.0, h=0.0)
realized = inverse.pi_inverse(point)
values = metric.psi(realized.triangulation, realized.lengths, 0.0).values
print("\noctagonal-cell point on the four-holed sphere:")
print("  psi at the added diagonal:", values[list(realized.added_edges)])
print("  metric:", realized.lengths)
again = delaunay.pi_map(realized.triangulation, realized.lengths, 0.0)
print("  pi_map returns the same point:", delaunay.points_match(point, again, 1e-7))

second = inverse.pi_inverse(point, anchor_offset=1)
again2 = delaunay.pi_map(second.triangulation, second.lengths, 0.0)
print("  different completion anchor, same point:",
      delaunay.points_match(again, again2, 1e-7))

# --- convexity of the solvable region -------------------------------------
a = metric.psi(sphere, sample_metric(sphere, 1), 0.0).values
b = metric.psi(sphere, sample_metric(sphere, 2), 0.0).values
for lam in (0.25, 0.5, 0.75):
    mid = lam * a + (1 - lam) * b
    solved = inverse.solve_metric(sphere, mid, 0.0)
    residual = np.abs(metric.psi(sphere, solved, 0.0).values - mid).max()
    print(f"midpoint lam={lam}: solved with residual {residual:.2e}")
