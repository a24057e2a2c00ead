import numpy as np
import pytest

from hyparc import catalog
from hyparc import delaunay as dl
from hyparc import metric as mt
from hyparc import surface as sf
from hyparc.errors import DegenerateCellError, DomainError
from hyparc.inverse import solve_metric

ACOSH2 = 1.3169578969248166
REGULAR = np.full(3, ACOSH2)


class TestMakeDelaunay:
    def test_regular_torus_no_flips(self):
        result = dl.make_delaunay(catalog.one_holed_torus(), REGULAR)
        assert result.flips == ()

    def test_single_flip_restores(self):
        tri = catalog.one_holed_torus()
        flipped_tri, flipped_len = mt.flip_geometric(tri, REGULAR, 0)
        assert mt.psi(flipped_tri, flipped_len, 0).values.min() < 0
        result = dl.make_delaunay(flipped_tri, flipped_len)
        assert len(result.flips) == 1
        assert sf.isomorphic(result.triangulation, tri) is not None
        assert result.lengths == pytest.approx(REGULAR, abs=1e-8)

    def test_random_metrics_terminate(self):
        tri = catalog.four_holed_sphere()
        rng = np.random.default_rng(31)
        for _ in range(200):
            lengths = np.exp(rng.uniform(-1.2, 1.2, 6))
            result = dl.make_delaunay(tri, lengths)
            values = mt.psi(result.triangulation, result.lengths, 0).values
            assert values.min() >= -1e-9
            before = np.sort(mt.boundary_lengths(tri, lengths))
            after = np.sort(
                mt.boundary_lengths(result.triangulation, result.lengths)
            )
            assert np.max(np.abs(after - before)) <= 1e-8


class TestDelaunayCells:
    def test_generic_metric_keeps_hexagons(self):
        tri = catalog.four_holed_sphere()
        rng = np.random.default_rng(32)
        for _ in range(20):
            result = dl.make_delaunay(tri, np.exp(rng.uniform(-1.2, 1.2, 6)))
            cells = dl.delaunay_cells(result.triangulation, result.lengths, 0.0)
            assert not cells.decomposition.deleted
            assert len(cells.decomposition.cells) == 4

    def test_pi_equals_psi_on_kept(self):
        tri = catalog.genus_two_one_boundary()
        result = dl.make_delaunay(
            tri, np.exp(np.random.default_rng(33).uniform(-1, 1, 9))
        )
        for h in (0.0, 0.5, 2.0):
            cells = dl.delaunay_cells(result.triangulation, result.lengths, h)
            psi_vals = mt.psi(result.triangulation, result.lengths, h).values
            for rank, e in enumerate(cells.decomposition.kept):
                assert cells.pi_values[rank] == psi_vals[e]

    def test_constructed_zero_edge_merges_cell(self):
        # realize a metric with one vanishing coordinate on the four-holed
        # sphere, then check that exactly that edge is merged away
        tri = catalog.four_holed_sphere()
        target = np.array([0.0, 1.0, 1.1, 0.9, 1.2, 1.3])
        lengths = solve_metric(tri, target, 0.0)
        cells = dl.delaunay_cells(tri, lengths, 0.0)
        assert set(cells.decomposition.deleted) == {0}
        side_counts = sorted(len(c) for c in cells.decomposition.cells)
        assert side_counts == [3, 3, 4]
        assert cells.coincidence_center <= 1e-6
        assert cells.coincidence_radius <= 1e-6

    def test_not_delaunay_rejected(self):
        tri = catalog.one_holed_torus()
        flipped_tri, flipped_len = mt.flip_geometric(tri, REGULAR, 0)
        with pytest.raises(DomainError):
            dl.delaunay_cells(flipped_tri, flipped_len, 0.0)

    def test_degenerate_dual_cycle(self):
        # two vanishing coordinates forming a dual cycle: realizable as a
        # metric (cycle sums stay positive) but not mergeable into cells
        tri = catalog.one_holed_torus()
        target = np.array([4e-10, 4e-10, 1.0])
        lengths = solve_metric(tri, target, 0.0)
        with pytest.raises(DegenerateCellError):
            dl.delaunay_cells(tri, lengths, 0.0)


class TestPiMap:
    def test_regular_torus_h0(self):
        point = dl.pi_map(catalog.one_holed_torus(), REGULAR, 0.0)
        assert point.weights == pytest.approx([1 / 3] * 3, abs=1e-12)
        assert point.scale == pytest.approx(3.9508736907744501, abs=1e-6)

    def test_regular_torus_h1(self):
        point = dl.pi_map(catalog.one_holed_torus(), REGULAR, 1.0)
        assert point.weights == pytest.approx([1 / 3] * 3, abs=1e-12)
        assert point.scale == pytest.approx(4.2426406871192851, abs=1e-6)

    def test_small_perturbation_same_cells(self):
        tri = catalog.one_holed_torus()
        point = dl.pi_map(tri, REGULAR, 0.0)
        bumped = REGULAR.copy()
        bumped[0] += 1e-4
        point_b = dl.pi_map(tri, bumped, 0.0)
        assert (
            sf.decomposition_isomorphic(
                point.decomposition, point_b.decomposition
            )
            is not None
        )
        assert np.max(np.abs(point.weights - point_b.weights)) <= 1e-2

    def test_h_independent_support(self):
        rng = np.random.default_rng(34)
        for fn in catalog.BUNDLED.values():
            tri = fn()
            lengths = np.exp(rng.uniform(-1.2, 1.2, tri.edge_count))
            points = [dl.pi_map(tri, lengths, h) for h in (0, 0.5, 1, 2, 3.5)]
            for h, other in zip((0.5, 1, 2, 3.5), points[1:]):
                assert (
                    sf.decomposition_isomorphic(
                        points[0].decomposition, other.decomposition
                    )
                    is not None
                )
                assert np.sign(
                    mt.psi(tri, lengths, h).values
                ) == pytest.approx(np.sign(mt.psi(tri, lengths, 0).values))

    def test_weights_positive_sum_one(self):
        rng = np.random.default_rng(35)
        tri = catalog.genus_two_one_boundary()
        for _ in range(20):
            point = dl.pi_map(tri, np.exp(rng.uniform(-1, 1, 9)), 1.5)
            assert np.all(point.weights > 0)
            assert point.weights.sum() == pytest.approx(1.0, abs=1e-12)
            assert point.scale > 0

    def test_injectivity_probe(self):
        tri = catalog.four_holed_sphere()
        rng = np.random.default_rng(36)
        count = 0
        while count < 100:
            a = np.exp(rng.uniform(-1, 1, 6))
            b = np.exp(rng.uniform(-1, 1, 6))
            if (
                mt.psi(tri, a, 0).values.min() < 1e-6
                or mt.psi(tri, b, 0).values.min() < 1e-6
                or np.max(np.abs(a - b)) < 1e-6
            ):
                continue
            count += 1
            pa, pb = dl.pi_map(tri, a, 0.0), dl.pi_map(tri, b, 0.0)
            assert not dl.points_match(pa, pb, 1e-9)


class TestArcComplexPoint:
    def test_validation(self):
        dec = sf.delete_edges(catalog.one_holed_torus(), [])
        with pytest.raises(DomainError):
            dl.ArcComplexPoint(dec, np.array([0.5, 0.5]), 1.0, 0.0)
        with pytest.raises(DomainError):
            dl.ArcComplexPoint(dec, np.array([0.5, 0.4, 0.2]), 1.0, 0.0)
        with pytest.raises(DomainError):
            dl.ArcComplexPoint(dec, np.array([0.5, 0.6, -0.1]), 1.0, 0.0)
        with pytest.raises(DomainError):
            dl.ArcComplexPoint(dec, np.array([1 / 3] * 3), -2.0, 0.0)

    def test_points_match_tolerance(self):
        tri = catalog.one_holed_torus()
        p = dl.pi_map(tri, REGULAR, 0.0)
        q = dl.pi_map(tri, REGULAR * (1 + 1e-12), 0.0)
        assert dl.points_match(p, q, 1e-7)
        r = dl.pi_map(tri, REGULAR * 1.05, 0.0)
        assert not dl.points_match(p, r, 1e-7)


class TestSpine:
    def test_regular_torus_theta_graph(self):
        tri = catalog.one_holed_torus()
        result = dl.make_delaunay(tri, REGULAR)
        cells = dl.delaunay_cells(result.triangulation, result.lengths, 0.0)
        spine = dl.spine(
            result.triangulation, result.lengths, cells.decomposition, cells
        )
        assert spine.cell_count == 2
        assert len(spine.links) == 3
        assert spine.degrees() == [3, 3]
        assert spine.radii[0] == pytest.approx(spine.radii[1], abs=1e-12)
        # regular inradius: sinh r = 1
        assert spine.radii[0] == pytest.approx(np.arcsinh(1.0), abs=1e-9)
        for alpha, alpha_prime in spine.gaps:
            assert alpha == pytest.approx(alpha_prime, abs=1e-9)

    def test_gap_identity_and_chi(self):
        rng = np.random.default_rng(37)
        for fn in catalog.BUNDLED.values():
            tri = fn()
            result = dl.make_delaunay(
                tri, np.exp(rng.uniform(-1, 1, tri.edge_count))
            )
            cells = dl.delaunay_cells(result.triangulation, result.lengths, 0.0)
            spine = dl.spine(
                result.triangulation, result.lengths, cells.decomposition, cells
            )
            inv = sf.surface_invariants(tri)
            assert spine.graph_chi == inv.chi
            assert spine.degrees() == [len(c) for c in cells.decomposition.cells]
            halves = mt.half_terms(result.triangulation, result.lengths)
            for (_, _, e), (alpha, alpha_prime) in zip(spine.links, spine.gaps):
                (h1, k1), (h2, k2) = result.triangulation.edges[e]
                assert abs(2 * alpha - 2 * halves[h1][k1]) <= 1e-7
                assert abs(2 * alpha_prime - 2 * halves[h2][k2]) <= 1e-7

    def test_merged_cell_spine(self):
        tri = catalog.four_holed_sphere()
        target = np.array([0.0, 1.0, 1.1, 0.9, 1.2, 1.3])
        lengths = solve_metric(tri, target, 0.0)
        cells = dl.delaunay_cells(tri, lengths, 0.0)
        spine = dl.spine(tri, lengths, cells.decomposition, cells)
        assert spine.cell_count == 3
        assert len(spine.links) == 5
        assert spine.graph_chi == -2
        assert sorted(spine.degrees()) == [3, 3, 4]
