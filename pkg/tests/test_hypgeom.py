import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hyparc import hypgeom as hg
from hyparc.errors import DomainError

ACOSH2 = 1.3169578969248166

side_lengths = st.floats(min_value=-1.5, max_value=1.5).map(np.exp)


def random_point(rng):
    return hg.random_isometry(rng) @ np.array([0.0, 0.0, 1.0])


def incircle_center_oracle(hexagon):
    """Independent closed-form equidistant point: the equal-signed-distance
    conditions are linear, so the center is a Minkowski cross product."""
    g = hexagon.arc_normals.astype(float)
    v = hg.mcross(g[0] - g[1], g[1] - g[2])
    if hg.mdot(v, v) < 0:
        return hg.normalize_point(v)
    return None


class TestPointDistance:
    def test_identity(self):
        p = np.array([0.0, 0.0, 1.0])
        assert hg.point_distance(p, p) == 0.0

    def test_unit_speed_geodesic(self):
        p = np.array([0.0, 0.0, 1.0])
        q = np.array([np.sinh(1.0), 0.0, np.cosh(1.0)])
        assert hg.point_distance(p, q) == pytest.approx(1.0, abs=1e-14)

    def test_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            p, q = random_point(rng), random_point(rng)
            assert hg.point_distance(p, q) == pytest.approx(
                hg.point_distance(q, p), abs=1e-13
            )

    def test_matches_acosh_form(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            p, q = random_point(rng), random_point(rng)
            assert hg.point_distance(p, q) == pytest.approx(
                np.arccosh(max(1.0, -hg.mdot(p, q))), rel=1e-10
            )


class TestGeodesicDistance:
    def test_coincident_is_intersecting(self):
        g = np.array([1.0, 0.0, 0.0])
        assert hg.geodesic_distance(g, g) is None

    def test_prescribed_distance(self):
        d = 0.7
        g = np.array([1.0, 0.0, 0.0])
        h = np.array([np.cosh(d), 0.0, np.sinh(d)])
        dist, foot_g, foot_h = hg.geodesic_distance(g, h)
        assert dist == pytest.approx(d, abs=1e-14)
        assert hg.point_distance(foot_g, foot_h) == pytest.approx(d, abs=1e-12)

    def test_feet_orthogonality(self):
        rng = np.random.default_rng(13)
        base = np.array([1.0, 0.0, 0.0])
        checked = 0
        while checked < 100:
            g = hg.random_isometry(rng) @ base
            h = hg.random_isometry(rng) @ base
            result = hg.geodesic_distance(g, h)
            if result is None:
                continue
            checked += 1
            dist, fg, fh = result
            assert abs(hg.mdot(fg, g)) < 1e-9
            assert abs(hg.mdot(fh, h)) < 1e-9
            connector = hg.direction(fg, fh)
            assert abs(hg.mdot(connector, hg.mcross(fg, g))) < 1e-8
            assert abs(hg.mdot(hg.direction(fh, fg), hg.mcross(fh, h))) < 1e-8


class TestSolveHexagon:
    def test_regular(self):
        arcs = hg.solve_hexagon(ACOSH2, ACOSH2, ACOSH2)
        assert arcs == pytest.approx([ACOSH2] * 3, abs=1e-14)

    def test_cosh_three(self):
        x = float(np.arccosh(3.0))
        arcs = hg.solve_hexagon(x, x, x)
        assert arcs == pytest.approx([0.9624236501192069] * 3, abs=1e-14)

    def test_unit_edges(self):
        arcs = hg.solve_hexagon(1.0, 1.0, 1.0)
        assert arcs == pytest.approx([1.7049128323580137] * 3, abs=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            hg.solve_hexagon(1.0, -0.2, 1.0)
        with pytest.raises(DomainError):
            hg.solve_hexagon(0.0, 1.0, 1.0)

    @settings(max_examples=150, deadline=None)
    @given(side_lengths, side_lengths, side_lengths)
    def test_involution(self, x0, x1, x2):
        arcs = hg.solve_hexagon(x0, x1, x2)
        back = hg.solve_hexagon(*arcs)
        assert back == pytest.approx([x0, x1, x2], rel=1e-9, abs=1e-11)


class TestDevelopHexagon:
    def test_regular_all_sides(self):
        hexagon = hg.develop_hexagon(ACOSH2, ACOSH2, ACOSH2)
        assert hexagon.measured_edge_lengths() == pytest.approx(
            [ACOSH2] * 3, abs=1e-12
        )
        assert hexagon.measured_arc_lengths() == pytest.approx(
            [ACOSH2] * 3, abs=1e-12
        )

    def test_roundtrip_random(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for _ in range(500):
            x = np.exp(rng.uniform(-1.5, 1.5, 3))
            hexagon = hg.develop_hexagon(*x)
            worst = max(
                worst, np.max(np.abs(hexagon.measured_edge_lengths() - x))
            )
            worst = max(
                worst,
                np.max(
                    np.abs(hexagon.measured_arc_lengths() - hexagon.arc_lengths)
                ),
            )
        assert worst <= 1e-9

    def test_interior_on_positive_side(self):
        hexagon = hg.develop_hexagon(0.9, 1.4, 0.6)
        normals = np.vstack([hexagon.arc_normals, hexagon.edge_normals]).astype(float)
        for n in normals:
            sides = [hg.mdot(v.astype(float), n) for v in hexagon.vertices]
            assert all(s > -1e-9 for s in sides)

    def test_canonical_position(self):
        hexagon = hg.develop_hexagon(1.0, 1.1, 1.2)
        assert hexagon.vertex_a(0) == pytest.approx([0.0, 0.0, 1.0], abs=1e-15)
        # the edge side arriving at A0 lies on the geodesic {x = 0}
        n = hexagon.edge_normals[1].astype(float)  # x_1 joins B_2 to A_0
        assert abs(abs(n[0]) - 1.0) < 1e-12 and abs(n[1]) < 1e-12

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            hg.develop_hexagon(1.0, 0.0, 1.0)


class TestIncircle:
    def test_regular_hexagon(self):
        hexagon = hg.develop_hexagon(ACOSH2, ACOSH2, ACOSH2)
        circle = hg.incircle(hexagon)
        assert circle.kind == "circle"
        for i in range(3):
            gap = hg.point_distance(
                circle.tangent_points[i], hexagon.vertex_b(i)
            )
            assert gap == pytest.approx(ACOSH2 / 2, abs=1e-9)
            # tangent point at the arc midpoint
            mid_a = hg.point_distance(
                circle.tangent_points[i], hexagon.vertex_a(i)
            )
            assert mid_a == pytest.approx(ACOSH2 / 2, abs=1e-9)

    def test_tangency_residual_random(self):
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(500):
            hexagon = hg.develop_hexagon(*np.exp(rng.uniform(-1.5, 1.5, 3)))
            circle = hg.incircle(hexagon)
            for g in hexagon.arc_normals.astype(float):
                if circle.kind == "circle":
                    worst = max(
                        worst,
                        abs(abs(hg.mdot(circle.center, g)) - np.sinh(circle.radius)),
                    )
                else:
                    worst = max(
                        worst,
                        abs(abs(hg.mdot(circle.center, g)) - np.cosh(circle.radius)),
                    )
        assert worst <= 1e-9

    def test_matches_linear_oracle(self):
        rng = np.random.default_rng(3)
        compared = 0
        for _ in range(300):
            hexagon = hg.develop_hexagon(*np.exp(rng.uniform(-1.5, 1.5, 3)))
            oracle = incircle_center_oracle(hexagon)
            if oracle is None:
                continue
            compared += 1
            circle = hg.incircle(hexagon)
            assert circle.kind == "circle"
            assert hg.point_distance(circle.center, oracle) <= 1e-9
        assert compared > 100

    def test_tangent_points_on_geodesics(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            hexagon = hg.develop_hexagon(*np.exp(rng.uniform(-1.2, 1.2, 3)))
            circle = hg.incircle(hexagon)
            for point, g in zip(
                circle.tangent_points, hexagon.arc_normals.astype(float)
            ):
                assert abs(hg.mdot(point, g)) < 1e-10


class TestSignedTangentGap:
    def test_regular_positive(self):
        hexagon = hg.develop_hexagon(ACOSH2, ACOSH2, ACOSH2)
        for i in range(3):
            assert hg.signed_tangent_gap(hexagon, i) == pytest.approx(
                0.6584789484624084, abs=1e-9
            )

    def test_zero_case(self):
        # arcs (t, t, 2t): the centre sits on the edge geodesic after arc 0
        t = 0.8
        hexagon = hg.develop_hexagon(*hg.solve_hexagon(t, t, 2 * t))
        assert abs(hg.signed_tangent_gap(hexagon, 0)) <= 1e-9
        # the tangent point collapses onto the vertex B_0
        circle = hg.incircle(hexagon)
        assert (
            hg.point_distance(circle.tangent_points[0], hexagon.vertex_b(0))
            <= 1e-7
        )

    def test_negative_case_with_side_test(self):
        t = 0.8
        hexagon = hg.develop_hexagon(*hg.solve_hexagon(t, t, 2.5 * t))
        circle = hg.incircle(hexagon)
        gap = hg.signed_tangent_gap(hexagon, 0, circle)
        assert gap == pytest.approx(-0.25 * t, abs=1e-9)
        side = hg.mdot(circle.center, hexagon.edge_normals[2].astype(float))
        assert side < 0

    def test_identity_random(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            hexagon = hg.develop_hexagon(*np.exp(rng.uniform(-1.5, 1.5, 3)))
            circle = hg.incircle(hexagon)
            arcs = hexagon.arc_lengths
            for i in range(3):
                gap = hg.signed_tangent_gap(hexagon, i, circle)
                law = arcs[i] + arcs[(i + 1) % 3] - arcs[(i + 2) % 3]
                assert abs(2 * gap - law) <= 1e-7

    def test_tangent_equalities(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            hexagon = hg.develop_hexagon(*np.exp(rng.uniform(-1.5, 1.5, 3)))
            circle = hg.incircle(hexagon)
            for j in range(3):
                tb = hg.point_distance(
                    circle.tangent_points[j], hexagon.vertex_b(j)
                )
                ta = hg.point_distance(
                    circle.tangent_points[(j + 1) % 3],
                    hexagon.vertex_a(j + 1),
                )
                assert abs(tb - ta) <= 1e-8

    def test_bad_index(self):
        hexagon = hg.develop_hexagon(1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            hg.signed_tangent_gap(hexagon, 3)


class TestIsometryInvariance:
    def test_distances_invariant(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            hexagon = hg.develop_hexagon(*np.exp(rng.uniform(-1.2, 1.2, 3)))
            matrix = hg.random_isometry(rng)
            moved = hexagon.transformed(matrix)
            assert np.max(
                np.abs(
                    moved.measured_edge_lengths()
                    - hexagon.measured_edge_lengths()
                )
            ) <= 1e-10
            assert np.max(
                np.abs(
                    moved.measured_arc_lengths()
                    - hexagon.measured_arc_lengths()
                )
            ) <= 1e-10

    def test_point_and_geodesic_distance_invariant(self):
        rng = np.random.default_rng(8)
        base = np.array([1.0, 0.0, 0.0])
        for _ in range(100):
            p, q = random_point(rng), random_point(rng)
            m = hg.random_isometry(rng)
            assert abs(
                hg.point_distance(m @ p, m @ q) - hg.point_distance(p, q)
            ) <= 1e-10
            g = hg.random_isometry(rng) @ base
            assert abs(hg.mdot(m @ p, m @ g) - hg.mdot(p, g)) <= 1e-9
