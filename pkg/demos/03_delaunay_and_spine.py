#!/usr/bin/env python3
"""Flipping a metric to Delaunay form and reading off its spine.

A random metric usually violates the local Delaunay condition (some edge
has a negative h=0 coordinate).  Flipping the worst edge repeatedly
terminates quickly; the result carries a cell decomposition whose dual
graph, with incircle radii and tangent gaps, is the spine."""

import numpy as np

from hyparc import catalog, delaunay, metric
from hyparc.verify import sample_metric

np.set_printoptions(precision=6, suppress=True)

tri = catalog.four_holed_sphere()
lengths = sample_metric(tri, seed=208)
print("four-holed sphere, random metric:", lengths)
print("psi_0 before:", metric.psi(tri, lengths, 0).values)

result = delaunay.make_delaunay(tri, lengths)
print("\nflip sequence:", list(result.flips))
print("psi_0 after:  ", metric.psi(result.triangulation, result.lengths, 0).values)
print("boundary lengths before:", np.sort(metric.boundary_lengths(tri, lengths)))
print("boundary lengths after: ", np.sort(
    metric.boundary_lengths(result.triangulation, result.lengths)))

cells = delaunay.delaunay_cells(result.triangulation, result.lengths, h=0.0)
print("\ndeleted edges:", sorted(cells.decomposition.deleted) or "none")
print("cells:", [len(c) for c in cells.decomposition.cells], "(sides each)")

spine = delaunay.spine(
    result.triangulation, result.lengths, cells.decomposition, cells
)
print("\nspine: nodes:", spine.cell_count, " links:", len(spine.links),
      " graph Euler characteristic:", spine.graph_chi)
print("incircle radii:", np.array(spine.radii))
for (cell_a, cell_b, e), (alpha, alpha_prime) in zip(spine.links, spine.gaps):
    print(f"  edge {e}: cells {cell_a}<->{cell_b}  gaps {alpha:+.6f} / {alpha_prime:+.6f}")

# A vanishing coordinate merges hexagons into one larger Delaunay cell.
from hyparc.inverse import solve_metric

target = np.array([0.0, 1.0, 1.1, 0.9, 1.2, 1.3])
merged_lengths = solve_metric(tri, target, 0.0)
merged = delaunay.delaunay_cells(tri, merged_lengths, h=0.0)
print("\nmetric built with one vanishing coordinate:")
print("  deleted edges:", sorted(merged.decomposition.deleted))
print("  cell sides:   ", [len(c) for c in merged.decomposition.cells])
print("  incircle agreement inside the merged cell: center",
      f"{merged.coincidence_center:.2e}", "radius",
      f"{merged.coincidence_radius:.2e}")
