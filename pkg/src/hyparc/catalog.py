"""Bundled example surfaces.

Gluings are written in the both-counterclockwise convention of
:mod:`hyparc.surface`; boundary counts below are what corner tracing yields
and are pinned by tests.
"""

from .surface import build_triangulation


def one_holed_torus():
    """Two hexagons, three edges glued with a cyclic twist: g=1, n=1."""
    return build_triangulation(
        2, [(((0, i)), ((1, (i + 1) % 3))) for i in range(3)]
    )


def pair_of_pants():
    """Two hexagons glued mirror-fashion: g=0, n=3."""
    return build_triangulation(
        2, [(((0, i)), ((1, (2 - i) % 3))) for i in range(3)]
    )


def four_holed_sphere():
    """Truncated tetrahedron: four hexagons, six edges, g=0, n=4."""
    return build_triangulation(
        4,
        [
            ((2, 0), (3, 2)),
            ((3, 0), (1, 2)),
            ((1, 0), (2, 2)),
            ((0, 0), (3, 1)),
            ((2, 1), (0, 2)),
            ((0, 1), (1, 1)),
        ],
    )


def genus_two_one_boundary():
    """Truncated one-vertex triangulation of the closed genus-2 surface
    (fan-triangulated octagon with identifications): g=2, n=1."""
    return build_triangulation(
        6,
        [
            ((0, 0), (1, 1)),
            ((0, 1), (2, 1)),
            ((3, 1), (5, 1)),
            ((4, 1), (5, 2)),
            ((1, 0), (0, 2)),
            ((2, 0), (1, 2)),
            ((3, 0), (2, 2)),
            ((4, 0), (3, 2)),
            ((5, 0), (4, 2)),
        ],
    )


BUNDLED = {
    "one_holed_torus": one_holed_torus,
    "pair_of_pants": pair_of_pants,
    "four_holed_sphere": four_holed_sphere,
    "genus_two_one_boundary": genus_two_one_boundary,
}
