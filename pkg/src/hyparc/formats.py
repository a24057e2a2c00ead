"""JSON file formats.

Surface:  {"hexagons": N, "edges": [[[h, s], [h', s']], ...]}
          (edge order in the file defines edge indices everywhere).
Metric:   {"lengths": [...]} ordered by the surface file's edge order.
Psi:      {"h": real, "values": [...]}.
Point:    {"surface": <surface>, "kept_edges": [...], "weights": [...],
           "scale": real, "h": real}.
"""

from __future__ import annotations

import json

import numpy as np

from .delaunay import ArcComplexPoint
from .errors import DomainError
from .metric import validate_lengths
from .surface import build_triangulation, delete_edges


def _as_dict(source):
    if isinstance(source, dict):
        return source
    with open(source, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_surface(source):
    data = _as_dict(source)
    try:
        return build_triangulation(data["hexagons"], data["edges"])
    except KeyError as exc:
        raise DomainError(f"surface object lacks key {exc}") from exc


def load_metric(source, tri=None):
    data = _as_dict(source)
    try:
        lengths = np.asarray(data["lengths"], dtype=float)
    except KeyError as exc:
        raise DomainError(f"metric object lacks key {exc}") from exc
    if tri is not None:
        lengths = validate_lengths(tri, lengths)
    return lengths


def load_psi(source):
    data = _as_dict(source)
    return float(data["h"]), np.asarray(data["values"], dtype=float)


def load_point(source):
    data = _as_dict(source)
    try:
        tri = load_surface(data["surface"])
        kept = [int(e) for e in data["kept_edges"]]
        weights = np.asarray(data["weights"], dtype=float)
        scale = float(data["scale"])
        h = float(data["h"])
    except KeyError as exc:
        raise DomainError(f"point object lacks key {exc}") from exc
    deleted = sorted(set(range(tri.edge_count)) - set(kept))
    decomposition = delete_edges(tri, deleted)
    if list(decomposition.kept) != sorted(kept):
        raise DomainError("kept_edges must list each kept edge exactly once")
    # File weights follow the kept_edges order; internally weights follow
    # ascending edge index.
    order = np.argsort(kept)
    return ArcComplexPoint(
        decomposition=decomposition,
        weights=weights[order],
        scale=scale,
        h=h,
    )


def dump_json(obj, path=None, indent=2):
    text = json.dumps(obj, indent=indent)
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    return text


def metric_dict(lengths):
    return {"lengths": [float(v) for v in lengths]}
