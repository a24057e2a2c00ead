"""Verification harness: seeded random sampling and the acceptance checks.

Every check is a deterministic function of (samples, seed).  Suites group
the checks; `run_suite` returns a report with one pass/fail entry per
check, each carrying its worst observed residual.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import catalog, hypgeom
from .delaunay import ArcComplexPoint, make_delaunay, pi_map, points_match, spine
from .delaunay import delaunay_cells
from .errors import UnknownSuite
from .inverse import pi_inverse, polytope_contains, solve_metric
from .metric import F, boundary_lengths, psi
from .surface import (
    decomposition_isomorphic,
    delete_edges,
    enumerate_edge_cycles,
)

# Frozen expectations for the regular one-holed torus (all edge lengths
# acosh 2): per-edge coordinates at h = 0, 1, 2.
REGULAR_EDGE = 1.3169578969248166
REGULAR_PSI = {0: 1.3169578969248166, 1: 1.4142135623730951, 2: 1.524504352246847}

H_FAMILY = (0.0, 0.5, 1.0, 2.0, 3.5)


def sample_metric(tri, seed):
    """Deterministic random metric: lengths exp(u), u uniform in
    [-1.2, 1.2] per edge."""
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(-1.2, 1.2, tri.edge_count))


def _sample_hexagon(rng):
    return np.exp(rng.uniform(-1.5, 1.5, 3))


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    count: int
    seconds: float
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return (
            f"[{status}] {self.name}: worst {self.worst:.3e} "
            f"(tol {self.tolerance:.0e}, n={self.count}, {self.seconds:.2f}s){extra}"
        )


@dataclass
class VerificationReport:
    suite: str
    samples: int
    seed: int
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json_dict(self):
        return {
            "suite": self.suite,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "wall_time": self.wall_time,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "worst_residual": c.worst,
                    "tolerance": c.tolerance,
                    "count": c.count,
                    "seconds": c.seconds,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }


def _result(name, worst, tol, count, t0, detail="", hard_fail=False):
    return CheckResult(
        name=name,
        passed=bool((not hard_fail) and worst <= tol),
        worst=float(worst),
        tolerance=tol,
        count=count,
        seconds=time.time() - t0,
        detail=detail,
    )


def check_hexagon_development(samples, seed):
    """Develop random hexagons and re-measure all six sides."""
    n = samples or 1000
    rng = np.random.default_rng(seed)
    t0 = time.time()
    worst = 0.0
    for _ in range(n):
        x = _sample_hexagon(rng)
        hexagon = hypgeom.develop_hexagon(*x)
        worst = max(worst, np.max(np.abs(hexagon.measured_edge_lengths() - x)))
        worst = max(
            worst,
            np.max(
                np.abs(hexagon.measured_arc_lengths() - hexagon.arc_lengths)
            ),
        )
    return _result("hexagon_development_roundtrip", worst, 1e-9, n, t0)


def _constructed_hexagons():
    """One hexagon for each tangent-gap sign case: all positive, one zero,
    one negative (arc triples (t, t, t), (t, t, 2t), (t, t, 2.5t))."""
    t = 0.8
    return [
        hypgeom.develop_hexagon(REGULAR_EDGE, REGULAR_EDGE, REGULAR_EDGE),
        hypgeom.develop_hexagon(*hypgeom.solve_hexagon(t, t, 2 * t)),
        hypgeom.develop_hexagon(*hypgeom.solve_hexagon(t, t, 2.5 * t)),
    ]


def check_tangent_gap_identity(samples, seed):
    """Twice the signed tangent gap equals a_i + a_{i+1} - a_{i+2}, with the
    gap sign matching the side of the edge geodesic the center falls on."""
    n = samples or 500
    rng = np.random.default_rng(seed)
    t0 = time.time()
    worst = 0.0
    sign_failures = 0
    hexagons = [hypgeom.develop_hexagon(*_sample_hexagon(rng)) for _ in range(n)]
    hexagons += _constructed_hexagons()
    for hexagon in hexagons:
        circle = hypgeom.incircle(hexagon)
        arcs = hexagon.arc_lengths
        for i in range(3):
            gap = hypgeom.signed_tangent_gap(hexagon, i, circle)
            law = arcs[i] + arcs[(i + 1) % 3] - arcs[(i + 2) % 3]
            worst = max(worst, abs(2.0 * gap - law))
            if abs(gap) > 1e-9:
                if circle.kind == "circle":
                    side = hypgeom.mdot(
                        circle.center, hexagon.edge_normals[(i + 2) % 3].astype(float)
                    )
                    if np.sign(gap) != np.sign(side):
                        sign_failures += 1
                elif np.sign(gap) != np.sign(law):
                    sign_failures += 1
    return _result(
        "tangent_gap_identity",
        worst,
        1e-7,
        len(hexagons),
        t0,
        detail=f"{sign_failures} sign disagreements",
        hard_fail=sign_failures > 0,
    )


def check_tangent_equalities(samples, seed):
    """|X_j B_j| = |X_{j+1} A_{j+1}| on random hexagons."""
    n = samples or 500
    rng = np.random.default_rng(seed)
    t0 = time.time()
    worst = 0.0
    for _ in range(n):
        hexagon = hypgeom.develop_hexagon(*_sample_hexagon(rng))
        circle = hypgeom.incircle(hexagon)
        for j in range(3):
            tb = hypgeom.point_distance(
                circle.tangent_points[j], hexagon.vertex_b(j)
            )
            ta = hypgeom.point_distance(
                circle.tangent_points[(j + 1) % 3], hexagon.vertex_a(j + 1)
            )
            worst = max(worst, abs(tb - ta))
    return _result("tangent_point_equalities", worst, 1e-8, n, t0)


def check_cell_h_independence(samples, seed):
    """pi_map decompositions agree across h and psi signs never depend on h."""
    per_surface = samples or 200
    rng = np.random.default_rng(seed)
    t0 = time.time()
    count = 0
    iso_failures = 0
    sign_failures = 0
    for tri in (fn() for fn in catalog.BUNDLED.values()):
        for _ in range(per_surface):
            lengths = np.exp(rng.uniform(-1.2, 1.2, tri.edge_count))
            count += 1
            signs = [np.sign(psi(tri, lengths, h).values) for h in H_FAMILY]
            if any(not np.array_equal(signs[0], s) for s in signs[1:]):
                sign_failures += 1
            points = [pi_map(tri, lengths, h) for h in H_FAMILY]
            for other in points[1:]:
                if (
                    decomposition_isomorphic(
                        points[0].decomposition, other.decomposition
                    )
                    is None
                ):
                    iso_failures += 1
    failures = iso_failures + sign_failures
    return _result(
        "cell_structure_h_independence",
        float(failures),
        0.5,
        count,
        t0,
        detail=f"{iso_failures} decomposition, {sign_failures} sign failures",
    )


def check_psi_roundtrip(samples, seed):
    """solve_metric inverts psi: recovered lengths within 1e-7, residual
    within 1e-9."""
    per_surface = samples or 100
    rng = np.random.default_rng(seed)
    t0 = time.time()
    worst_len = 0.0
    worst_res = 0.0
    count = 0
    for tri in (fn() for fn in catalog.BUNDLED.values()):
        for _ in range(per_surface):
            lengths = np.exp(rng.uniform(-1.2, 1.2, tri.edge_count))
            for h in (0.0, 1.0, 2.0):
                target = psi(tri, lengths, h).values
                solved = solve_metric(tri, target, h)
                worst_len = max(worst_len, np.max(np.abs(solved - lengths)))
                worst_res = max(
                    worst_res,
                    np.max(np.abs(psi(tri, solved, h).values - target)),
                )
                count += 1
    detail = f"worst residual {worst_res:.3e} (tol 1e-9)"
    return _result(
        "coordinate_roundtrip",
        worst_len,
        1e-7,
        count,
        t0,
        detail=detail,
        hard_fail=worst_res > 1e-9,
    )


def check_flip_invariants(samples, seed):
    """Double flips restore lengths, flips preserve boundary lengths, and
    the flip loop terminates with a Delaunay certificate."""
    per_surface = samples or 50
    rng = np.random.default_rng(seed)
    t0 = time.time()
    worst = 0.0
    count = 0
    max_flips = 0
    worst_cert = 0.0
    from .metric import flip_geometric

    for tri in (fn() for fn in catalog.BUNDLED.values()):
        for _ in range(per_surface):
            lengths = np.exp(rng.uniform(-1.2, 1.2, tri.edge_count))
            count += 1
            before = np.sort(boundary_lengths(tri, lengths))
            for e in range(tri.edge_count):
                if tri.is_self_glued(e):
                    continue
                t1, m1 = flip_geometric(tri, lengths, e)
                worst = max(
                    worst,
                    np.max(np.abs(np.sort(boundary_lengths(t1, m1)) - before)),
                )
                _, m2 = flip_geometric(t1, m1, e)
                worst = max(worst, abs(m2[e] - lengths[e]))
            result = make_delaunay(tri, lengths)
            max_flips = max(max_flips, len(result.flips))
            worst_cert = max(
                worst_cert,
                -float(np.min(psi(result.triangulation, result.lengths, 0).values)),
            )
    detail = f"max flips {max_flips}, worst certificate {worst_cert:.3e}"
    return _result(
        "flip_invariants",
        max(worst, worst_cert),
        1e-9,
        count,
        t0,
        detail=detail,
    )


def _forest_subsets(tri, max_size):
    """Deleted-edge candidates that are dual forests, grouped by size."""
    from .errors import NonFillable

    found = {1: [], 2: []}
    for size in (1, 2):
        if size > max_size:
            continue
        for combo in itertools.combinations(range(tri.edge_count), size):
            try:
                delete_edges(tri, combo)
            except NonFillable:
                continue
            found[size].append(combo)
    return found


def check_pi_roundtrips(samples, seed):
    """pi_inverse is a two-sided inverse of pi_map at sample scale,
    including points with one and two vanishing diagonals."""
    per_surface = samples or 50
    rng = np.random.default_rng(seed)
    t0 = time.time()
    count = 0
    failures = 0
    for tri in (fn() for fn in catalog.BUNDLED.values()):
        # metric -> point -> metric -> point
        for _ in range(max(5, per_surface // 5)):
            lengths = np.exp(rng.uniform(-1.0, 1.0, tri.edge_count))
            h = float(rng.choice([0.0, 1.0, 2.0]))
            point = pi_map(tri, lengths, h)
            realized = pi_inverse(point)
            again = pi_map(realized.triangulation, realized.lengths, h)
            count += 1
            if not points_match(point, again, 1e-7):
                failures += 1
        # constructed points, exercising larger cells where the surface
        # admits them (one or two deleted diagonals)
        forests = _forest_subsets(tri, 2)
        options = [()] + forests[1] + forests[2]
        for k in range(per_surface):
            deleted = options[k % len(options)]
            decomposition = delete_edges(tri, deleted)
            kept = decomposition.kept
            raw = rng.uniform(0.2, 1.0, len(kept))
            point = ArcComplexPoint(
                decomposition=decomposition,
                weights=raw / raw.sum(),
                scale=float(rng.uniform(1.0, 3.0) * len(kept)),
                h=float(rng.choice([0.0, 0.5, 1.0, 2.0])),
            )
            realized = pi_inverse(point)
            again = pi_map(realized.triangulation, realized.lengths, point.h)
            count += 1
            if not points_match(point, again, 1e-7):
                failures += 1
    return _result(
        "pi_roundtrips",
        float(failures),
        0.5,
        count,
        t0,
        detail=f"{failures} mismatches",
    )


def check_completion_independence(samples, seed):
    """Different fan anchors in pi_inverse realize the same point."""
    per_surface = max(4, (samples or 12) // 4)
    rng = np.random.default_rng(seed)
    t0 = time.time()
    count = 0
    failures = 0
    for tri in (fn() for fn in catalog.BUNDLED.values()):
        forests = _forest_subsets(tri, 2)
        for deleted in (forests[1] + forests[2])[:per_surface]:
            decomposition = delete_edges(tri, deleted)
            kept = decomposition.kept
            raw = rng.uniform(0.2, 1.0, len(kept))
            point = ArcComplexPoint(
                decomposition=decomposition,
                weights=raw / raw.sum(),
                scale=float(len(kept)),
                h=float(rng.choice([0.0, 1.0])),
            )
            first = pi_inverse(point, anchor_offset=0)
            second = pi_inverse(point, anchor_offset=1)
            p1 = pi_map(first.triangulation, first.lengths, point.h)
            p2 = pi_map(second.triangulation, second.lengths, point.h)
            count += 1
            if not (points_match(p1, p2, 1e-7) and points_match(point, p1, 1e-7)):
                failures += 1
    return _result(
        "completion_independence",
        float(failures),
        0.5,
        count,
        t0,
        detail=f"{failures} mismatches",
    )


def _edge_cycle_sets_bruteforce(tri):
    """Independent cycle oracle: edge subsets whose sub-multigraph is
    connected with every vertex of degree exactly two."""
    sets = []
    for size in range(1, tri.edge_count + 1):
        for combo in itertools.combinations(range(tri.edge_count), size):
            degree = {}
            for e in combo:
                for (h, _) in tri.edges[e]:
                    degree[h] = degree.get(h, 0) + 1
            if any(d != 2 for d in degree.values()):
                continue
            nodes = sorted(degree)
            adj = {h: set() for h in nodes}
            for e in combo:
                (h1, _), (h2, _) = tri.edges[e]
                adj[h1].add(h2)
                adj[h2].add(h1)
            seen = {nodes[0]}
            stack = [nodes[0]]
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            if len(seen) == len(nodes):
                sets.append(frozenset(combo))
    return set(sets)


def check_convexity_membership(samples, seed):
    """Membership agrees with brute-force cycle enumeration and midpoints
    of realizable targets stay realizable."""
    n = samples or 200
    rng = np.random.default_rng(seed)
    t0 = time.time()
    failures = 0
    count = 0
    for tri in (catalog.one_holed_torus(), catalog.four_holed_sphere()):
        brute = _edge_cycle_sets_bruteforce(tri)
        enumerated = {frozenset(c.edges) for c in enumerate_edge_cycles(tri)}
        count += 1
        if brute != enumerated:
            failures += 1
        for _ in range(n):
            target = rng.uniform(-1.0, 2.0, tri.edge_count)
            inside, _ = polytope_contains(tri, target)
            brute_inside = all(
                sum(target[e] for e in cyc) > 1e-12 for cyc in brute
            )
            count += 1
            if inside != brute_inside:
                failures += 1
    # convexity of the realizable region
    worst_res = 0.0
    for tri in (fn() for fn in catalog.BUNDLED.values()):
        m1 = np.exp(rng.uniform(-1.0, 1.0, tri.edge_count))
        m2 = np.exp(rng.uniform(-1.0, 1.0, tri.edge_count))
        for h in (0.0, 1.0):
            t1 = psi(tri, m1, h).values
            t2 = psi(tri, m2, h).values
            for lam in (0.25, 0.5, 0.75):
                mid = lam * t1 + (1.0 - lam) * t2
                solved = solve_metric(tri, mid, h)
                worst_res = max(
                    worst_res, np.max(np.abs(psi(tri, solved, h).values - mid))
                )
                count += 1
    return _result(
        "convexity_and_membership",
        float(failures),
        0.5,
        count,
        t0,
        detail=f"{failures} membership mismatches, midpoint residual {worst_res:.2e}",
        hard_fail=worst_res > 1e-9,
    )


def check_continuity(samples, seed):
    """Small length perturbations move the weights slightly without changing
    the decomposition; a constructed path pins down a sign wall."""
    per_surface = samples or 25
    rng = np.random.default_rng(seed)
    t0 = time.time()
    worst_weight = 0.0
    structure_failures = 0
    count = 0
    for tri in (fn() for fn in catalog.BUNDLED.values()):
        done = 0
        while done < per_surface:
            lengths = np.exp(rng.uniform(-1.0, 1.0, tri.edge_count))
            if np.min(psi(tri, lengths, 0).values) < 0.05:
                continue  # only Delaunay-stable starting metrics
            done += 1
            count += 1
            point = pi_map(tri, lengths, 1.0)
            bumped = lengths.copy()
            bumped[int(rng.integers(tri.edge_count))] += 1e-4
            point_b = pi_map(tri, bumped, 1.0)
            if (
                decomposition_isomorphic(
                    point.decomposition, point_b.decomposition
                )
                is None
                or point.decomposition.deleted != point_b.decomposition.deleted
            ):
                structure_failures += 1
                continue
            worst_weight = max(
                worst_weight, np.max(np.abs(point.weights - point_b.weights))
            )

    # Walk straight through a sign wall on the one-holed torus and bisect.
    tri = catalog.one_holed_torus()
    m0 = np.full(3, REGULAR_EDGE)
    m1 = solve_metric(tri, np.array([-0.3, 1.0, 1.0]), 0.0)
    lo, hi = 0.0, 1.0
    f = lambda t: psi(tri, (1 - t) * m0 + t * m1, 0).values[0]
    assert f(lo) > 0 > f(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    crossing = abs(f(0.5 * (lo + hi)))
    count += 1
    detail = (
        f"{structure_failures} structure changes, wall |psi_0| {crossing:.2e}"
    )
    return _result(
        "continuity",
        worst_weight,
        1e-2,
        count,
        t0,
        detail=detail,
        hard_fail=structure_failures > 0 or crossing > 1e-6,
    )


def check_quadrature(samples, seed):
    """Quadrature matches the closed forms of F and the frozen coordinates
    of the regular one-holed torus."""
    n = samples or 41
    t0 = time.time()
    worst_rel = 0.0
    for h in (0.0, 1.0, 2.0):
        for t in np.linspace(-5.0, 5.0, n):
            closed = F(t, h, method="closed")
            quad = F(t, h, method="quadrature")
            if closed != 0.0:
                worst_rel = max(worst_rel, abs(quad - closed) / abs(closed))
            else:
                worst_rel = max(worst_rel, abs(quad - closed))
    tri = catalog.one_holed_torus()
    lengths = np.full(3, REGULAR_EDGE)
    worst_psi = 0.0
    for h, expected in REGULAR_PSI.items():
        values = psi(tri, lengths, h).values
        worst_psi = max(worst_psi, np.max(np.abs(values - expected)))
    return _result(
        "quadrature_and_constants",
        worst_rel,
        1e-12,
        3 * n + 3,
        t0,
        detail=f"regular-torus psi error {worst_psi:.2e} (tol 1e-6)",
        hard_fail=worst_psi > 1e-6,
    )


CHECKS = {
    "hexagon": [check_hexagon_development],
    "lemma31": [check_tangent_gap_identity, check_tangent_equalities],
    "sign": [check_cell_h_independence],
    "roundtrip": [check_psi_roundtrip, check_quadrature],
    "delaunay": [check_flip_invariants],
    "inverse": [
        check_pi_roundtrips,
        check_completion_independence,
        check_convexity_membership,
    ],
    "continuity": [check_continuity],
}

SUITES = tuple(CHECKS) + ("all",)

ALL_CHECKS = [
    check_hexagon_development,
    check_tangent_gap_identity,
    check_tangent_equalities,
    check_cell_h_independence,
    check_psi_roundtrip,
    check_flip_invariants,
    check_pi_roundtrips,
    check_completion_independence,
    check_convexity_membership,
    check_continuity,
    check_quadrature,
]


def run_suite(name, samples=None, seed=0, progress=None):
    """Run one named suite ("all" runs every check) and return the report."""
    if name not in SUITES:
        raise UnknownSuite(
            f"unknown suite {name!r}; choose from {', '.join(SUITES)}"
        )
    checks = ALL_CHECKS if name == "all" else CHECKS[name]
    report = VerificationReport(
        suite=name, samples=samples or 0, seed=seed
    )
    t0 = time.time()
    for check in checks:
        result = check(samples, seed)
        report.checks.append(result)
        if progress is not None:
            progress(result.line())
    report.wall_time = time.time() - t0
    return report
