"""Command-line interface.

Commands read and write the JSON formats of :mod:`hyparc.formats` on
standard input paths and standard output.  Exit codes: 0 success, 1 invalid
input, 2 numerical failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import formats, verify
from .delaunay import delaunay_cells, make_delaunay, pi_map
from .inverse import pi_inverse
from .metric import psi, validate_lengths
from .surface import surface_invariants


def _poincare(vector):
    v = np.asarray(vector, dtype=float)
    return [float(v[0] / (1.0 + v[2])), float(v[1] / (1.0 + v[2]))]


def _development_payload(tri, lengths, cells):
    from .delaunay import cell_placements

    payload = []
    placements = cell_placements(tri, lengths, cells.decomposition)
    for cell_id, placement in enumerate(placements):
        hexagons = []
        for hexagon, (matrix, geometry) in sorted(placement.items()):
            verts = geometry.vertices.astype(float) @ matrix.T
            hexagons.append(
                {
                    "hexagon": hexagon,
                    "vertices": [[float(x) for x in v] for v in verts],
                    "vertices_poincare": [_poincare(v) for v in verts],
                }
            )
        circle = cells.incircles[cell_id]
        payload.append(
            {
                "cell": cell_id,
                "hexagons": hexagons,
                "incircle": {
                    "center": [float(x) for x in circle.center],
                    "center_poincare": _poincare(circle.center),
                    "radius": circle.radius,
                    "tangent_points": [
                        [float(x) for x in p] for p in circle.tangent_points
                    ],
                },
            }
        )
    return payload


def _cmd_surface(args):
    tri = formats.load_surface(args.surface)
    if args.action == "info":
        print(formats.dump_json(surface_invariants(tri).to_json_dict()))
    return 0


def _cmd_psi(args):
    tri = formats.load_surface(args.surface)
    lengths = formats.load_metric(args.metric, tri)
    print(formats.dump_json(psi(tri, lengths, args.h).to_json_dict()))
    return 0


def _cmd_delaunay(args):
    tri = formats.load_surface(args.surface)
    lengths = formats.load_metric(args.metric, tri)
    result = make_delaunay(tri, lengths, tol=args.tol)
    cells = delaunay_cells(result.triangulation, result.lengths, 0.0, tol=args.tol)
    out = {
        "surface": result.triangulation.to_json_dict(),
        "lengths": [float(v) for v in result.lengths],
        "flips": list(result.flips),
        "min_psi0": float(np.min(cells.psi0)),
        "kept_edges": list(cells.decomposition.kept),
        "deleted_edges": sorted(cells.decomposition.deleted),
        "cells": len(cells.decomposition.cells),
    }
    if args.emit_dev is not None:
        development = _development_payload(result.triangulation, result.lengths, cells)
        if args.emit_dev == "-":
            out["development"] = development
        else:
            formats.dump_json({"cells": development}, path=args.emit_dev)
    print(formats.dump_json(out))
    return 0


def _cmd_pi(args):
    tri = formats.load_surface(args.surface)
    lengths = formats.load_metric(args.metric, tri)
    point = pi_map(tri, lengths, args.h, tol=args.tol)
    print(formats.dump_json(point.to_json_dict()))
    return 0


def _cmd_pi_inverse(args):
    point = formats.load_point(args.point)
    result = pi_inverse(point, anchor_offset=args.anchor_offset)
    out = {
        "surface": result.triangulation.to_json_dict(),
        "lengths": [float(v) for v in result.lengths],
        "added_edges": list(result.added_edges),
        "kept_edges": list(result.decomposition.kept),
        "h": point.h,
    }
    print(formats.dump_json(out))
    return 0


def _cmd_sample(args):
    tri = formats.load_surface(args.surface)
    metrics = [
        formats.metric_dict(verify.sample_metric(tri, args.seed + k))
        for k in range(args.count)
    ]
    print(formats.dump_json(metrics[0] if args.count == 1 else metrics))
    return 0


def _cmd_verify(args):
    report = verify.run_suite(
        args.suite,
        samples=args.samples,
        seed=args.seed,
        progress=lambda line: print(line, file=sys.stderr),
    )
    print(formats.dump_json(report.to_json_dict()))
    return 0 if report.passed else 3


def _nonnegative_float(text):
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hyparc",
        description=(
            "Boundary-arc coordinates, Delaunay cell decompositions, and "
            "coordinate inversion for hyperbolic surfaces with boundary."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface", help="inspect a surface file")
    p.add_argument("action", choices=["info"])
    p.add_argument("surface", help="surface JSON file")
    p.set_defaults(func=_cmd_surface)

    p = sub.add_parser("psi", help="coordinates of a metric")
    p.add_argument("--surface", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--h", type=_nonnegative_float, default=0.0)
    p.set_defaults(func=_cmd_psi)

    p = sub.add_parser("delaunay", help="flip a metric to Delaunay form")
    p.add_argument("--surface", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument(
        "--emit-dev",
        nargs="?",
        const="-",
        default=None,
        metavar="PATH",
        help="write developed cells and incircles (to PATH, or inline with no value)",
    )
    p.set_defaults(func=_cmd_delaunay)

    p = sub.add_parser("pi", help="arc-complex point of a metric")
    p.add_argument("--surface", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--h", type=_nonnegative_float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_pi)

    p = sub.add_parser("pi-inverse", help="metric realizing a point file")
    p.add_argument("--point", required=True)
    p.add_argument("--anchor-offset", type=int, default=0)
    p.set_defaults(func=_cmd_pi_inverse)

    p = sub.add_parser("sample", help="seeded random metrics for a surface")
    p.add_argument("--surface", required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", help=", ".join(verify.SUITES))
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    except RuntimeError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        trace = getattr(exc, "residual_trace", None) or getattr(
            exc, "flip_trace", None
        )
        if trace:
            payload["trace"] = trace
        print(json.dumps(payload), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
