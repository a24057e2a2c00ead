import itertools

import pytest

from hyparc import catalog
from hyparc import surface as sf
from hyparc.errors import InvalidGluing, NonFillable, SelfGluedEdge


def self_glued_surface():
    """Two hexagons with two self-glued edges and one connecting edge."""
    return sf.build_triangulation(
        2, [((0, 0), (0, 1)), ((0, 2), (1, 0)), ((1, 1), (1, 2))]
    )


class TestBuildTriangulation:
    def test_one_holed_torus(self):
        tri = catalog.one_holed_torus()
        inv = sf.surface_invariants(tri)
        assert (inv.genus, inv.boundary_count) == (1, 1)

    def test_pair_of_pants(self):
        inv = sf.surface_invariants(catalog.pair_of_pants())
        assert (inv.genus, inv.boundary_count) == (0, 3)

    def test_slot_reused(self):
        with pytest.raises(InvalidGluing):
            sf.build_triangulation(
                2, [((0, 1), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))]
            )

    def test_wrong_edge_count(self):
        with pytest.raises(InvalidGluing):
            sf.build_triangulation(2, [((0, 0), (1, 0)), ((0, 1), (1, 1))])

    def test_disconnected(self):
        with pytest.raises(InvalidGluing):
            sf.build_triangulation(
                4,
                [
                    ((0, i), (1, (2 - i) % 3)) for i in range(3)
                ]
                + [((2, i), (3, (2 - i) % 3)) for i in range(3)],
            )

    def test_bad_slot(self):
        with pytest.raises(InvalidGluing):
            sf.build_triangulation(1, [((0, 0), (0, 3))])


class TestSurfaceInvariants:
    @pytest.mark.parametrize(
        "name,expect",
        [
            ("one_holed_torus", (-1, 1, 1, 3)),
            ("pair_of_pants", (-1, 0, 3, 3)),
            ("four_holed_sphere", (-2, 0, 4, 6)),
            ("genus_two_one_boundary", (-3, 2, 1, 9)),
        ],
    )
    def test_bundled(self, name, expect):
        inv = sf.surface_invariants(catalog.BUNDLED[name]())
        assert (inv.chi, inv.genus, inv.boundary_count, inv.edge_count) == expect

    @pytest.mark.parametrize("name", list(catalog.BUNDLED))
    def test_dimension_relations(self, name):
        inv = sf.surface_invariants(catalog.BUNDLED[name]())
        assert inv.chi == inv.hexagon_count - inv.edge_count
        assert inv.chi == 2 - 2 * inv.genus - inv.boundary_count
        assert inv.edge_count == 6 * inv.genus - 6 + 3 * inv.boundary_count
        corners = [c for comp in inv.boundary_corners for c in comp]
        assert len(corners) == 3 * inv.hexagon_count
        assert len(set(corners)) == len(corners)


def brute_force_cycle_sets(tri):
    """Independent oracle: edge subsets inducing a connected degree-two
    sub-multigraph."""
    found = set()
    for size in range(1, tri.edge_count + 1):
        for combo in itertools.combinations(range(tri.edge_count), size):
            degree = {}
            for e in combo:
                for h, _ in tri.edges[e]:
                    degree[h] = degree.get(h, 0) + 1
            if any(d != 2 for d in degree.values()):
                continue
            nodes = sorted(degree)
            adj = {h: set() for h in nodes}
            for e in combo:
                (h1, _), (h2, _) = tri.edges[e]
                adj[h1].add(h2)
                adj[h2].add(h1)
            seen, stack = {nodes[0]}, [nodes[0]]
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            if len(seen) == len(nodes):
                found.add(frozenset(combo))
    return found


class TestEdgeCycles:
    def test_torus_three_pairs(self):
        cycles = sf.enumerate_edge_cycles(catalog.one_holed_torus())
        assert sorted((frozenset(c.edges) for c in cycles), key=sorted) == [
            frozenset({0, 1}),
            frozenset({0, 2}),
            frozenset({1, 2}),
        ]

    def test_pants_same_dual(self):
        cycles = sf.enumerate_edge_cycles(catalog.pair_of_pants())
        assert len(cycles) == 3 and all(len(c) == 2 for c in cycles)

    def test_tree_fixture_empty(self):
        assert sf.simple_multigraph_cycles(4, [(0, 1), (1, 2), (1, 3)]) == []

    def test_loop_and_parallel(self):
        cycles = sf.simple_multigraph_cycles(2, [(0, 0), (0, 1), (0, 1)])
        assert sorted(c[1] for c in cycles) == [(0,), (1, 2)]

    @pytest.mark.parametrize("name", list(catalog.BUNDLED))
    def test_against_bruteforce(self, name):
        tri = catalog.BUNDLED[name]()
        enumerated = {frozenset(c.edges) for c in sf.enumerate_edge_cycles(tri)}
        assert enumerated == brute_force_cycle_sets(tri)

    def test_cycle_structure(self):
        for cycle in sf.enumerate_edge_cycles(catalog.four_holed_sphere()):
            n = len(cycle)
            assert len(set(cycle.hexagons)) == n
            for i, e in enumerate(cycle.edges):
                ends = {inc[0] for inc in catalog.four_holed_sphere().edges[e]}
                assert ends == {cycle.hexagons[i], cycle.hexagons[(i + 1) % n]}


class TestFlip:
    def test_involution_up_to_isomorphism(self):
        tri = catalog.one_holed_torus()
        twice = sf.combinatorial_flip(sf.combinatorial_flip(tri, 0), 0)
        assert sf.isomorphic(twice, tri) is not None

    def test_preserves_counts_and_invariants(self):
        for fn in catalog.BUNDLED.values():
            tri = fn()
            inv = sf.surface_invariants(tri)
            for e in range(tri.edge_count):
                if tri.is_self_glued(e):
                    continue
                flipped = sf.combinatorial_flip(tri, e)
                assert flipped.hexagon_count == tri.hexagon_count
                assert flipped.edge_count == tri.edge_count
                inv2 = sf.surface_invariants(flipped)
                assert (inv2.genus, inv2.boundary_count) == (
                    inv.genus,
                    inv.boundary_count,
                )

    def test_self_glued_rejected(self):
        tri = self_glued_surface()
        with pytest.raises(SelfGluedEdge):
            sf.combinatorial_flip(tri, 0)

    def test_self_glued_surface_is_valid(self):
        inv = sf.surface_invariants(self_glued_surface())
        assert inv.chi == -1


class TestDeleteEdges:
    def test_nothing_deleted(self):
        tri = catalog.one_holed_torus()
        dec = sf.delete_edges(tri, [])
        assert len(dec.cells) == 2
        assert all(len(cell) == 3 for cell in dec.cells)

    def test_octagon(self):
        tri = catalog.one_holed_torus()
        dec = sf.delete_edges(tri, [0])
        assert len(dec.cells) == 1
        assert len(dec.cells[0]) == 4
        # each polygon vertex merges the corner runs across the deleted edge
        assert sorted(len(run) for run in dec.corners[0]) == [1, 1, 2, 2]

    def test_dual_cycle_rejected(self):
        tri = catalog.one_holed_torus()
        with pytest.raises(NonFillable) as err:
            sf.delete_edges(tri, [0, 1])
        assert set(err.value.cycle.edges) == {0, 1}

    def test_self_glued_loop_rejected(self):
        tri = self_glued_surface()
        with pytest.raises(NonFillable):
            sf.delete_edges(tri, [0])


class TestTriangulateCells:
    def test_identity_when_nothing_deleted(self):
        tri = catalog.four_holed_sphere()
        dec = sf.delete_edges(tri, [])
        rebuilt, added, kept_map = sf.triangulate_cells(dec)
        assert added == ()
        assert sf.isomorphic(rebuilt, tri) is not None
        assert kept_map == {e: e for e in range(tri.edge_count)}

    def test_octagon_needs_one_diagonal(self):
        dec = sf.delete_edges(catalog.one_holed_torus(), [0])
        rebuilt, added, _ = sf.triangulate_cells(dec)
        assert len(added) == 1
        back = sf.delete_edges(rebuilt, added)
        assert sf.decomposition_isomorphic(back, dec) is not None

    def test_decagon_two_anchors(self):
        dec = sf.delete_edges(catalog.four_holed_sphere(), [0, 1])
        first, added_a, _ = sf.triangulate_cells(dec, anchor_offset=0)
        second, added_b, _ = sf.triangulate_cells(dec, anchor_offset=1)
        assert len(added_a) == len(added_b) == 2
        assert sf.isomorphic(first, second) is None
        for rebuilt, added in ((first, added_a), (second, added_b)):
            assert (
                sf.decomposition_isomorphic(sf.delete_edges(rebuilt, added), dec)
                is not None
            )

    def test_added_set_is_forest(self):
        dec = sf.delete_edges(catalog.genus_two_one_boundary(), [1, 2])
        rebuilt, added, _ = sf.triangulate_cells(dec)
        sf.delete_edges(rebuilt, added)  # must not raise


class TestIsomorphic:
    def test_identity(self):
        tri = catalog.four_holed_sphere()
        face_map, edge_map = sf.isomorphic(tri, tri)
        assert face_map[0] == (0, 0)
        assert edge_map == {e: e for e in range(6)}

    def test_relabeled_hexagons(self):
        tri = catalog.pair_of_pants()
        relabeled = sf.build_triangulation(
            2, [((1, i), (0, (2 - i) % 3)) for i in range(3)]
        )
        assert sf.isomorphic(tri, relabeled) is not None

    def test_different_surfaces(self):
        assert (
            sf.isomorphic(catalog.one_holed_torus(), catalog.pair_of_pants())
            is None
        )
        assert (
            sf.isomorphic(catalog.four_holed_sphere(), catalog.one_holed_torus())
            is None
        )
