"""Dataset-level geometry operations: clipping features to a boundary."""

from __future__ import annotations

import math

from ..model import Dataset, Feature, MultiPoint, NullShape, Point, PolyLine, Polygon
from .config import DEFAULT_CONFIG, GeometryConfig
from .overlay import boolean_op, rings_to_segments
from .predicates import point_in_polygon


def _clip_part(part, boundary: Polygon, eps: float):
    """Sub-segments of one polyline part inside the boundary, restitched."""
    bsegs = rings_to_segments(boundary.rings)
    chains = []
    current = []
    for (ax, ay), (bx, by) in zip(part, part[1:]):
        seg_len = math.hypot(bx - ax, by - ay)
        if seg_len <= eps:
            continue
        cut_ts = [0.0, 1.0]
        for (cx, cy, dx, dy) in bsegs:
            rx, ry = bx - ax, by - ay
            sx, sy = dx - cx, dy - cy
            lj = math.hypot(sx, sy)
            denom = rx * sy - ry * sx
            if abs(denom) <= 1e-12 * seg_len * lj:
                continue
            qpx, qpy = cx - ax, cy - ay
            t = (qpx * sy - qpy * sx) / denom
            u = (qpx * ry - qpy * rx) / denom
            if -eps / seg_len <= t <= 1 + eps / seg_len and -eps / lj <= u <= 1 + eps / lj:
                cut_ts.append(min(max(t, 0.0), 1.0))
        cut_ts = sorted(set(cut_ts))
        for t0, t1 in zip(cut_ts, cut_ts[1:]):
            if (t1 - t0) * seg_len <= eps:
                continue
            mx = ax + (bx - ax) * (t0 + t1) / 2.0
            my = ay + (by - ay) * (t0 + t1) / 2.0
            if point_in_polygon(mx, my, boundary, eps):
                p0 = (ax + (bx - ax) * t0, ay + (by - ay) * t0)
                p1 = (ax + (bx - ax) * t1, ay + (by - ay) * t1)
                if current and current[-1] == p0:
                    current.append(p1)
                else:
                    if len(current) >= 2:
                        chains.append(tuple(current))
                    current = [p0, p1]
            else:
                if len(current) >= 2:
                    chains.append(tuple(current))
                current = []
    if len(current) >= 2:
        chains.append(tuple(current))
    return chains


def clip_dataset(
    target: Dataset, boundary: Polygon, cfg: GeometryConfig = DEFAULT_CONFIG
) -> Dataset:
    """Intersect every feature with the boundary; drop features that vanish."""
    eps = cfg.snap_epsilon
    out: list[Feature] = []
    for feat in target.features:
        g = feat.geometry
        if isinstance(g, NullShape):
            continue
        if isinstance(g, Point):
            if point_in_polygon(g.x, g.y, boundary, eps):
                out.append(feat)
            continue
        if isinstance(g, MultiPoint):
            kept = tuple(
                c for c in g.coords if point_in_polygon(c[0], c[1], boundary, eps)
            )
            if kept:
                out.append(Feature(MultiPoint(kept), feat.attributes))
            continue
        if isinstance(g, PolyLine):
            parts = []
            for part in g.parts:
                parts.extend(_clip_part(part, boundary, eps))
            if parts:
                out.append(Feature(PolyLine(tuple(parts)), feat.attributes))
            continue
        if isinstance(g, Polygon):
            clipped = boolean_op("intersection", g, boundary, eps)
            if not clipped.is_empty:
                out.append(Feature(clipped, feat.attributes))
            continue
    return Dataset.build(target.shape_kind, out, target.fields, target.crs_wkt)
