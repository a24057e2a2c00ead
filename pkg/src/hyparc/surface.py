"""Combinatorics of ideal triangulations of bordered surfaces.

A surface is a ribbon structure of right-angled hexagons: each hexagon
carries three edge slots 0, 1, 2 and three boundary arcs 0, 1, 2, in the
counterclockwise cyclic order slot 0, arc 0, slot 1, arc 1, slot 2, arc 2.
Every edge of the triangulation glues two (hexagon, slot) incidences,
reversing orientation.  Under this convention the arc facing slot k is arc
(k + 1) mod 3 and the arcs adjacent to slot k are arcs k and (k - 1) mod 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    InvalidGluing,
    NonFillable,
    SelfGluedEdge,
    TooManyCycles,
)

CYCLE_CAP = 10**6


@dataclass(frozen=True)
class IdealTriangulation:
    """Hexagons glued along edges; edge order fixes edge indices downstream."""

    hexagon_count: int
    edges: tuple  # tuple of ((hexagon, slot), (hexagon, slot))
    slot_edge: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        if self.slot_edge is None:
            lookup = {}
            for e, (a, b) in enumerate(self.edges):
                lookup[a] = e
                lookup[b] = e
            object.__setattr__(self, "slot_edge", lookup)

    @property
    def edge_count(self):
        return len(self.edges)

    def edge_at(self, hexagon, slot):
        return self.slot_edge[(hexagon, slot % 3)]

    def other_end(self, edge, hexagon, slot):
        """The incidence of `edge` that is not (hexagon, slot)."""
        a, b = self.edges[edge]
        return b if a == (hexagon, slot) else a

    def is_self_glued(self, edge):
        a, b = self.edges[edge]
        return a[0] == b[0]

    def hexagon_slots(self, hexagon):
        return tuple(self.edge_at(hexagon, s) for s in range(3))

    def to_json_dict(self):
        return {
            "hexagons": self.hexagon_count,
            "edges": [[list(a), list(b)] for a, b in self.edges],
        }


def build_triangulation(hexagon_count, edges):
    """Validate a gluing description and return the triangulation.

    Raises InvalidGluing when a slot is reused or missing, counts do not
    match, or the glued surface is disconnected.
    """
    if hexagon_count < 1:
        raise InvalidGluing("at least one hexagon is required")
    norm = []
    seen = {}
    for e, pair in enumerate(edges):
        if len(pair) != 2:
            raise InvalidGluing(f"edge {e} must list exactly two incidences")
        inc = []
        for h, s in pair:
            h, s = int(h), int(s)
            if not (0 <= h < hexagon_count) or not (0 <= s < 3):
                raise InvalidGluing(f"edge {e} references invalid slot ({h}, {s})")
            if (h, s) in seen:
                raise InvalidGluing(
                    f"slot ({h}, {s}) used by edges {seen[(h, s)]} and {e}"
                )
            seen[(h, s)] = e
            inc.append((h, s))
        norm.append(tuple(inc))
    if len(seen) != 3 * hexagon_count:
        missing = [
            (h, s)
            for h in range(hexagon_count)
            for s in range(3)
            if (h, s) not in seen
        ]
        raise InvalidGluing(f"unglued slots remain: {missing}")
    if 3 * hexagon_count != 2 * len(norm):
        raise InvalidGluing(
            f"{hexagon_count} hexagons need {3 * hexagon_count / 2} edges, "
            f"got {len(norm)}"
        )

    parent = list(range(hexagon_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (h1, _), (h2, _) in norm:
        parent[find(h1)] = find(h2)
    if len({find(h) for h in range(hexagon_count)}) != 1:
        raise InvalidGluing("glued surface is disconnected")

    return IdealTriangulation(hexagon_count=hexagon_count, edges=tuple(norm))


@dataclass(frozen=True)
class SurfaceInvariants:
    chi: int
    genus: int
    boundary_count: int
    boundary_corners: tuple  # per component, cyclic tuple of (hexagon, arc slot)
    hexagon_count: int
    edge_count: int

    def to_json_dict(self):
        return {
            "hexagons": self.hexagon_count,
            "edges": self.edge_count,
            "chi": self.chi,
            "genus": self.genus,
            "boundary_count": self.boundary_count,
            "boundary_corners": [
                [list(c) for c in comp] for comp in self.boundary_corners
            ],
        }


def boundary_components(tri):
    """Boundary components as cyclic tuples of (hexagon, arc slot) corners.

    Following the induced boundary orientation, after the arc at (h, k) the
    boundary crosses the endpoint of the edge at slot (k + 1) of h and
    continues along the arc at the glued incidence's slot.
    """
    succ = {}
    for h in range(tri.hexagon_count):
        for k in range(3):
            e = tri.edge_at(h, (k + 1) % 3)
            succ[(h, k)] = tri.other_end(e, h, (k + 1) % 3)
    components = []
    remaining = set(succ)
    while remaining:
        start = min(remaining)
        orbit = []
        cur = start
        while True:
            orbit.append(cur)
            remaining.discard(cur)
            cur = succ[cur]
            if cur == start:
                break
        components.append(tuple(orbit))
    return tuple(components)


def surface_invariants(tri):
    comps = boundary_components(tri)
    chi = tri.hexagon_count - tri.edge_count
    n = len(comps)
    genus2 = 2 - n - chi
    if genus2 % 2 or genus2 < 0:
        raise InvalidGluing(
            f"gluing is not an oriented surface: chi={chi}, boundary={n}"
        )
    return SurfaceInvariants(
        chi=chi,
        genus=genus2 // 2,
        boundary_count=n,
        boundary_corners=comps,
        hexagon_count=tri.hexagon_count,
        edge_count=tri.edge_count,
    )


@dataclass(frozen=True)
class EdgeCycle:
    """Closed dual walk: edges[i] joins hexagons[i] and hexagons[(i+1) % n],
    with all hexagons distinct and all edges distinct."""

    edges: tuple
    hexagons: tuple

    def __len__(self):
        return len(self.edges)


def simple_multigraph_cycles(node_count, links, cap=CYCLE_CAP):
    """All simple cycles of an undirected multigraph, once each up to
    rotation and reversal.

    `links` is a sequence of (node, node) pairs; loops count as cycles of
    length one and a pair of parallel links as a cycle of length two.
    Returns (nodes tuple, links tuple) pairs where links[i] joins nodes[i]
    and nodes[(i+1) % n].
    """
    by_node = [[] for _ in range(node_count)]
    cycles = []
    for idx, (a, b) in enumerate(links):
        if a == b:
            cycles.append(((a,), (idx,)))
        else:
            by_node[a].append((b, idx))
            by_node[b].append((a, idx))

    def extend(start, path_nodes, path_links, used_links):
        if len(cycles) > cap:
            raise TooManyCycles(f"more than {cap} simple cycles")
        cur = path_nodes[-1]
        for nxt, idx in by_node[cur]:
            if idx in used_links:
                continue
            if nxt == start and len(path_nodes) >= 2:
                links_seq = path_links + (idx,)
                # Reversal sends (e1, ..., ek) traversed from `start` to
                # (ek, ..., e1); keep the lexicographically smaller one.
                if links_seq <= links_seq[::-1]:
                    cycles.append((tuple(path_nodes), links_seq))
                continue
            if nxt <= start or nxt in path_nodes:
                continue
            extend(start, path_nodes + (nxt,), path_links + (idx,), used_links | {idx})

    for s in range(node_count):
        extend(s, (s,), (), frozenset())
    return cycles


def enumerate_edge_cycles(tri):
    """All simple edge cycles of the dual multigraph of a triangulation."""
    links = [(a[0], b[0]) for a, b in tri.edges]
    raw = simple_multigraph_cycles(tri.hexagon_count, links)
    return [EdgeCycle(edges=ls, hexagons=ns) for ns, ls in raw]


def combinatorial_flip(tri, edge):
    """Replace `edge` by the opposite diagonal of the two incident hexagons.

    The two hexagons are re-cut along the other diagonal of their octagonal
    union; all other edges keep their incidences up to relabeled slots, and
    the flipped edge keeps its index.  Flipping the new edge again returns
    an isomorphic triangulation.
    """
    (h1, k1), (h2, k2) = tri.edges[edge]
    if h1 == h2:
        raise SelfGluedEdge(f"edge {edge} has both sides in hexagon {h1}")

    # Around the octagon the four surviving slots of h1 and h2 redistribute:
    # the new hexagon reusing index h1 reads (old (h1, k1+1), new edge,
    # old (h2, k2+2)) and the one reusing h2 reads (new edge, old (h1, k1+2),
    # old (h2, k2+1)).
    relocate = {
        (h1, (k1 + 1) % 3): (h1, 0),
        (h2, (k2 + 2) % 3): (h1, 2),
        (h1, (k1 + 2) % 3): (h2, 1),
        (h2, (k2 + 1) % 3): (h2, 2),
    }
    new_edges = []
    for e, (a, b) in enumerate(tri.edges):
        if e == edge:
            new_edges.append(((h1, 1), (h2, 0)))
        else:
            new_edges.append((relocate.get(a, a), relocate.get(b, b)))
    return IdealTriangulation(tri.hexagon_count, tuple(new_edges))


@dataclass(frozen=True)
class CellDecomposition:
    """A triangulation with a dual forest of deleted edges.

    cells[c] is the counterclockwise boundary walk of cell c as a tuple of
    kept (hexagon, slot) incidences; corners[c][i] is the run of (hexagon,
    arc slot) corners between side i and side i + 1 of that walk (a single
    polygon vertex of the cell).
    """

    base: IdealTriangulation
    deleted: frozenset
    cells: tuple
    corners: tuple
    cell_of_hexagon: tuple

    @property
    def kept(self):
        return tuple(
            e for e in range(self.base.edge_count) if e not in self.deleted
        )

    def cell_faces(self):
        """Per cell, the cyclic tuple of kept edge indices along its boundary."""
        return [
            tuple(self.base.edge_at(h, s) for h, s in walk) for walk in self.cells
        ]

    def to_json_dict(self):
        return {
            "surface": self.base.to_json_dict(),
            "kept_edges": list(self.kept),
        }


def _deleted_cycle_witness(tri, deleted_subset, closing_edge):
    """A dual cycle formed by `closing_edge` plus a path in the forest."""
    h_from, h_to = (inc[0] for inc in tri.edges[closing_edge])
    adj = {}
    for e in deleted_subset:
        a, b = tri.edges[e]
        adj.setdefault(a[0], []).append((b[0], e))
        adj.setdefault(b[0], []).append((a[0], e))
    # BFS path h_from -> h_to through already-deleted edges.
    prev = {h_from: None}
    queue = [h_from]
    while queue:
        cur = queue.pop(0)
        if cur == h_to:
            break
        for nxt, e in adj.get(cur, ()):
            if nxt not in prev:
                prev[nxt] = (cur, e)
                queue.append(nxt)
    nodes, links = [h_to], []
    cur = h_to
    while prev[cur] is not None:
        cur, e = prev[cur]
        nodes.append(cur)
        links.append(e)
    nodes.reverse()
    links.reverse()
    return EdgeCycle(edges=tuple(links) + (closing_edge,), hexagons=tuple(nodes))


def delete_edges(tri, deleted):
    """Merge hexagons across `deleted` into cells.

    The deleted set must be a forest in the dual multigraph (equivalently,
    every complementary region stays a disk); otherwise NonFillable is
    raised with a witness cycle.
    """
    deleted = frozenset(int(e) for e in deleted)
    for e in deleted:
        if not (0 <= e < tri.edge_count):
            raise NonFillable(f"edge index {e} out of range")

    parent = list(range(tri.hexagon_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    merged = []
    for e in sorted(deleted):
        (h1, _), (h2, _) = tri.edges[e]
        if find(h1) == find(h2):
            witness = _deleted_cycle_witness(tri, merged, e)
            raise NonFillable(
                f"deleted edges contain a dual cycle through edge {e}",
                cycle=witness,
            )
        parent[find(h1)] = find(h2)
        merged.append(e)

    roots = sorted({find(h) for h in range(tri.hexagon_count)})
    cell_ids = {root: c for c, root in enumerate(roots)}
    cell_of_hexagon = tuple(cell_ids[find(h)] for h in range(tri.hexagon_count))

    # Trace each cell boundary: from a kept slot advance counterclockwise,
    # crossing deleted edges into the neighbouring hexagon.
    def successor(h, s):
        corners = []
        h_cur, s_cur = h, (s + 1) % 3
        while True:
            corners.append((h_cur, (s_cur + 2) % 3))
            e = tri.edge_at(h_cur, s_cur)
            if e not in deleted:
                return (h_cur, s_cur), tuple(corners)
            h_cur, s_cur = tri.other_end(e, h_cur, s_cur)
            s_cur = (s_cur + 1) % 3

    kept_incidences = [
        (h, s)
        for h in range(tri.hexagon_count)
        for s in range(3)
        if tri.edge_at(h, s) not in deleted
    ]
    cells, corners = [], []
    remaining = set(kept_incidences)
    while remaining:
        start = min(remaining)
        walk, corner_runs = [], []
        cur = start
        while True:
            walk.append(cur)
            remaining.discard(cur)
            cur, run = successor(*cur)
            corner_runs.append(run)
            if cur == start:
                break
        cells.append(tuple(walk))
        corners.append(tuple(corner_runs))

    return CellDecomposition(
        base=tri,
        deleted=deleted,
        cells=tuple(cells),
        corners=tuple(corners),
        cell_of_hexagon=cell_of_hexagon,
    )


def triangulate_cells(decomposition, anchor_offset=0):
    """Complete a cell decomposition to an ideal triangulation with fan
    diagonals.

    Within each cell the fan anchor is the polygon vertex containing the
    lowest (hexagon, arc slot) corner; `anchor_offset` rotates the choice to
    the next-lowest vertices, giving alternative completions.  Returns
    (triangulation, added edge indices, mapping original kept edge index ->
    new edge index).  Kept edges come first in ascending original order.
    """
    base = decomposition.base
    kept = decomposition.kept
    kept_new_index = {e: i for i, e in enumerate(kept)}

    incidence_map = {}  # original kept incidence -> (new hexagon, slot)
    added_pairs = []
    next_hexagon = 0

    for walk, corner_runs in zip(decomposition.cells, decomposition.corners):
        m = len(walk)
        if m < 3:
            raise NonFillable(f"cell with {m} sides cannot be right-angled")
        order = sorted(range(m), key=lambda i: min(corner_runs[i]))
        alpha = order[anchor_offset % m]
        # Vertex j of the fan is polygon vertex (alpha + j) mod m; the side
        # between fan vertices j-1 and j is walk[(alpha + j) mod m].
        side = lambda j: walk[(alpha + j) % m]

        if m == 3:
            for j in range(1, 4):
                incidence_map[side(j)] = (next_hexagon, j - 1)
            next_hexagon += 1
            continue

        tri_ids = list(range(next_hexagon, next_hexagon + m - 2))
        next_hexagon += m - 2
        for t, hexagon in enumerate(tri_ids):
            j = t + 1  # triangle (v0, v_j, v_{j+1})
            # slot 0: v0 -> v_j, slot 1: v_j -> v_{j+1}, slot 2: v_{j+1} -> v0
            if j == 1:
                incidence_map[side(1)] = (hexagon, 0)
            else:
                added_pairs.append(((tri_ids[t - 1], 2), (hexagon, 0)))
            incidence_map[side(j + 1)] = (hexagon, 1)
            if j + 1 == m - 1:
                incidence_map[side(m)] = (hexagon, 2)

    new_edges = []
    for e in kept:
        a, b = base.edges[e]
        new_edges.append((incidence_map[a], incidence_map[b]))
    added_indices = tuple(range(len(new_edges), len(new_edges) + len(added_pairs)))
    new_edges.extend(added_pairs)

    tri = IdealTriangulation(next_hexagon, tuple(new_edges))
    return tri, added_indices, {e: kept_new_index[e] for e in kept}


def _ribbon_isomorphisms(faces_a, faces_b):
    """All orientation-preserving isomorphisms between two ribbon complexes.

    Faces are cyclic tuples of edge labels; every label occurs exactly twice
    overall.  Yields (face map, edge map) pairs where face map sends face
    index to (face index, rotation), in deterministic scan order.
    """
    if len(faces_a) != len(faces_b):
        return
    if sorted(len(f) for f in faces_a) != sorted(len(f) for f in faces_b):
        return

    def incidences(faces):
        table = {}
        for f, sides in enumerate(faces):
            for p, e in enumerate(sides):
                table.setdefault(e, []).append((f, p))
        return table

    inc_a, inc_b = incidences(faces_a), incidences(faces_b)
    if any(len(v) != 2 for v in inc_a.values()) or any(
        len(v) != 2 for v in inc_b.values()
    ):
        raise InvalidGluing("ribbon complex has unpaired sides")

    def other(table, e, here):
        first, second = table[e]
        return second if first == here else first

    size_a0 = len(faces_a[0])
    for f0 in range(len(faces_b)):
        if len(faces_b[f0]) != size_a0:
            continue
        for rot in range(size_a0):
            face_map = {0: (f0, rot)}
            edge_map = {}
            edge_map_rev = {}
            queue = [0]
            ok = True
            while queue and ok:
                fa = queue.pop()
                fb, r = face_map[fa]
                na = len(faces_a[fa])
                for p in range(na):
                    ea = faces_a[fa][p]
                    eb = faces_b[fb][(p + r) % na]
                    if ea in edge_map:
                        if edge_map[ea] != eb:
                            ok = False
                            break
                    elif eb in edge_map_rev:
                        ok = False
                        break
                    else:
                        edge_map[ea] = eb
                        edge_map_rev[eb] = ea
                    fa2, p2 = other(inc_a, ea, (fa, p))
                    fb2, q2 = other(inc_b, eb, (fb, (p + r) % na))
                    if len(faces_a[fa2]) != len(faces_b[fb2]):
                        ok = False
                        break
                    rot2 = (q2 - p2) % len(faces_a[fa2])
                    if fa2 in face_map:
                        if face_map[fa2] != (fb2, rot2):
                            ok = False
                            break
                    else:
                        face_map[fa2] = (fb2, rot2)
                        queue.append(fa2)
            if ok and len(face_map) == len(faces_a):
                if len({fb for fb, _ in face_map.values()}) != len(faces_b):
                    continue
                yield face_map, edge_map


def isomorphic(tri_a, tri_b):
    """Hexagon/slot bijection between triangulations preserving the gluing
    and the counterclockwise slot order, or None (first match in canonical
    scan order)."""
    faces_a = [tri_a.hexagon_slots(h) for h in range(tri_a.hexagon_count)]
    faces_b = [tri_b.hexagon_slots(h) for h in range(tri_b.hexagon_count)]
    return next(_ribbon_isomorphisms(faces_a, faces_b), None)


def decomposition_isomorphic(dec_a, dec_b):
    """Cell-structure isomorphism between two decompositions, as (cell map,
    kept-edge map), or None.  The bases may differ; only the glued polygon
    complexes are compared."""
    return next(decomposition_isomorphisms(dec_a, dec_b), None)


def decomposition_isomorphisms(dec_a, dec_b):
    """Iterator over all cell-structure isomorphisms (symmetric complexes
    admit several; weight comparisons must try each)."""
    return _ribbon_isomorphisms(dec_a.cell_faces(), dec_b.cell_faces())
