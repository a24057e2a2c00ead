"""Membership in the coordinate image and numerical inversion.

For a fixed ideal triangulation, a target vector is realized by a metric
exactly when its sum over every edge cycle of the dual multigraph is
positive, and the realizing metric is unique.  Checking simple cycles
suffices: a closed dual walk revisiting a hexagon splits there into two
shorter closed walks, so every cycle sum is a sum of simple-cycle sums.
The realizing metric is found by a damped Newton iteration in log-length
variables, which keeps all lengths positive by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidTarget, NoConvergence
from .metric import psi, psi_jacobian
from .surface import delete_edges, enumerate_edge_cycles, triangulate_cells

MEMBERSHIP_MARGIN = 1e-12


def polytope_contains(tri, target, margin=MEMBERSHIP_MARGIN):
    """Whether `target` lies in the realizable open region.

    Returns (True, None) when every simple edge cycle has target sum above
    `margin`, else (False, witness cycle).
    """
    target = np.asarray(target, dtype=float)
    if target.shape != (tri.edge_count,):
        raise InvalidTarget(
            f"expected {tri.edge_count} entries, got shape {target.shape}"
        )
    if not np.all(np.isfinite(target)):
        raise InvalidTarget("target entries must be finite")
    for cycle in enumerate_edge_cycles(tri):
        if sum(target[e] for e in cycle.edges) <= margin:
            return False, cycle
    return True, None


def solve_metric(
    tri,
    target,
    h,
    tol=1e-9,
    max_iter=200,
    restarts=5,
    restart_seed=20210,
    max_step=3.0,
):
    """Metric whose coordinate vector at `h` equals `target`.

    Damped Newton in log-length variables with the analytic Jacobian and a
    backtracking line search on the residual norm; the initial guess is the
    all-ones metric, followed by seeded random restarts.  Raises
    InvalidTarget when the membership test fails and NoConvergence (with
    the residual trace) when no attempt reaches `tol`.
    """
    target = np.asarray(target, dtype=float)
    inside, cycle = polytope_contains(tri, target)
    if not inside:
        raise InvalidTarget(
            f"cycle {cycle.edges} has nonpositive target sum", cycle=cycle
        )

    rng = np.random.default_rng(restart_seed)
    guesses = [np.zeros(tri.edge_count)]
    guesses += [
        rng.uniform(-1.0, 1.0, tri.edge_count) for _ in range(restarts)
    ]

    trace = []
    for u0 in guesses:
        u = u0.copy()
        residual = psi(tri, np.exp(u), h).values - target
        norm = np.linalg.norm(residual)
        attempt = [float(np.max(np.abs(residual)))]
        for _ in range(max_iter):
            if np.max(np.abs(residual)) <= tol:
                trace.append(attempt)
                return np.exp(u)
            lengths = np.exp(u)
            jac = psi_jacobian(tri, lengths, h) * lengths[None, :]
            try:
                step = np.linalg.solve(jac, -residual)
            except np.linalg.LinAlgError:
                break
            biggest = np.max(np.abs(step))
            if biggest > max_step:
                step *= max_step / biggest
            lam = 1.0
            while lam > 1e-12:
                u_new = u + lam * step
                res_new = psi(tri, np.exp(u_new), h).values - target
                norm_new = np.linalg.norm(res_new)
                if norm_new < (1.0 - 1e-4 * lam) * norm:
                    break
                lam *= 0.5
            else:
                break
            u, residual, norm = u_new, res_new, norm_new
            attempt.append(float(np.max(np.abs(residual))))
        else:
            if np.max(np.abs(residual)) <= tol:
                trace.append(attempt)
                return np.exp(u)
        trace.append(attempt)
    raise NoConvergence(
        f"no attempt reached residual {tol}", residual_trace=trace
    )


@dataclass(frozen=True)
class PiInverseResult:
    """Realization of an arc-complex point: completed triangulation, metric,
    added diagonal indices, and the decomposition in the new edge indexing."""

    triangulation: object
    lengths: np.ndarray
    added_edges: tuple
    decomposition: object
    kept_edge_map: dict  # original kept edge index -> new edge index


def pi_inverse(point, anchor_offset=0, tol=1e-9):
    """Metric realizing an arc-complex point.

    Completes the decomposition with fan diagonals, then solves for the
    metric whose coordinates are scale * weight on the kept edges and zero
    on the diagonals.  The target passes membership automatically: the
    added edges form a dual forest, so every cycle crosses a kept edge and
    kept targets are positive.  Different completion anchors realize
    metrics with the same weighted decomposition.
    """
    tri, added, kept_map = triangulate_cells(
        point.decomposition, anchor_offset=anchor_offset
    )
    target = np.zeros(tri.edge_count)
    for rank, e in enumerate(point.decomposition.kept):
        target[kept_map[e]] = point.scale * point.weights[rank]
    lengths = solve_metric(tri, target, point.h, tol=tol)
    decomposition = delete_edges(tri, added)
    return PiInverseResult(
        triangulation=tri,
        lengths=lengths,
        added_edges=added,
        decomposition=decomposition,
        kept_edge_map=kept_map,
    )
