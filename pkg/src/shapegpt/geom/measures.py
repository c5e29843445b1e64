"""Lengths, areas, bounding rectangles, dispersion statistics, conversions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import (
    DegenerateLine,
    DegenerateOrientation,
    EmptyInput,
    LatitudeOutOfRange,
    SelfIntersecting,
    TooFewPoints,
    TooFewVertices,
    UnsupportedCrsPair,
    WrongGeometryKind,
)
from ..model import Coord, Geometry, Point, PolyLine, Polygon
from . import kernels
from .config import DispersionStats
from .overlay import ring_self_intersects


def polyline_length(g: Geometry) -> float:
    """Sum of Euclidean segment lengths (polygon: perimeter over all rings)."""
    if isinstance(g, PolyLine):
        parts = g.parts
    elif isinstance(g, Polygon):
        parts = g.rings
    else:
        raise WrongGeometryKind(f"length undefined for {type(g).__name__}")
    total = 0.0
    for part in parts:
        for (x0, y0), (x1, y1) in zip(part, part[1:]):
            total += math.hypot(x1 - x0, y1 - y0)
    return total


def polygon_area(g: Geometry) -> float:
    """Outer-ring area minus hole areas, using the winding convention."""
    if not isinstance(g, Polygon):
        raise WrongGeometryKind(f"area undefined for {type(g).__name__}")
    total = -sum(kernels.signed_area(r) for r in g.rings)  # CW positive
    return max(total, 0.0)


def vertices_to_points(g: Geometry) -> list[Coord]:
    """Part/ring vertices in storage order; ring closure emitted once."""
    if isinstance(g, PolyLine):
        return [c for part in g.parts for c in part]
    if isinstance(g, Polygon):
        out = []
        for ring in g.rings:
            out.extend(ring[:-1] if len(ring) > 1 and ring[0] == ring[-1] else ring)
        return out
    raise WrongGeometryKind(f"no vertices to extract from {type(g).__name__}")


def ensure_ring_winding(ring: tuple[Coord, ...], clockwise: bool) -> tuple[Coord, ...]:
    area = kernels.signed_area(ring)
    if (area < 0.0) == clockwise:
        return ring
    return tuple(reversed(ring))


def lines_to_polygons(g: PolyLine, eps: float = 1e-9) -> Polygon:
    """Close each part into a ring, outer-clockwise normalized."""
    if not isinstance(g, PolyLine):
        raise WrongGeometryKind("input must be a polyline")
    rings = []
    for part in g.parts:
        pts = list(part)
        if pts[0] == pts[-1]:
            pts = pts[:-1]
        distinct = len(set(pts))
        if distinct < 3:
            raise TooFewVertices(f"part with {distinct} distinct vertices cannot close")
        if ring_self_intersects(pts, eps):
            raise SelfIntersecting("closed part would self-intersect")
        ring = tuple(pts) + (pts[0],)
        rings.append(ensure_ring_winding(ring, clockwise=True))
    return Polygon(tuple(rings))


def polygons_to_lines(g: Polygon) -> PolyLine:
    if not isinstance(g, Polygon):
        raise WrongGeometryKind("input must be a polygon")
    return PolyLine(tuple(g.rings))


def points_to_line(start: Coord, end: Coord, eps: float = 1e-9) -> PolyLine:
    if math.hypot(end[0] - start[0], end[1] - start[1]) <= eps:
        raise DegenerateLine(f"start and end coincide within {eps}")
    return PolyLine(((start, end),))


# --- minimum bounding rectangle ----------------------------------------------


@dataclass(frozen=True)
class BoundingRect:
    polygon: Polygon
    area: float
    degenerate: bool  # collinear input: zero-area rectangle
    mode: str


def convex_hull(points: list[Coord]) -> list[Coord]:
    """Monotone chain; returns CCW hull without closing vertex."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _rect_polygon(corners: list[Coord]) -> Polygon:
    ring = tuple(corners) + (corners[0],)
    return Polygon((ensure_ring_winding(ring, clockwise=True),))


def min_bounding_rect(points: list[Coord], mode: str = "min_area") -> BoundingRect:
    """Smallest enclosing rectangle: axis_aligned bbox or rotating calipers."""
    if not points:
        raise EmptyInput("no points")
    if mode not in ("axis_aligned", "min_area"):
        raise ValueError(f"unknown mode {mode!r}")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if mode == "axis_aligned":
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        area = (x1 - x0) * (y1 - y0)
        return BoundingRect(_rect_polygon(corners), area, area == 0.0, mode)

    hull = convex_hull(points)
    if len(hull) == 1:
        p = hull[0]
        return BoundingRect(_rect_polygon([p, p, p, p]), 0.0, True, mode)
    if len(hull) == 2:
        p, q = hull
        return BoundingRect(_rect_polygon([p, q, q, p]), 0.0, True, mode)

    best = None
    n = len(hull)
    for i in range(n):
        ex = hull[(i + 1) % n][0] - hull[i][0]
        ey = hull[(i + 1) % n][1] - hull[i][1]
        elen = math.hypot(ex, ey)
        if elen == 0.0:
            continue
        ux, uy = ex / elen, ey / elen  # edge frame
        us = [px * ux + py * uy for px, py in hull]
        vs = [-px * uy + py * ux for px, py in hull]
        u0, u1, v0, v1 = min(us), max(us), min(vs), max(vs)
        area = (u1 - u0) * (v1 - v0)
        if best is None or area < best[0]:
            best = (area, ux, uy, u0, u1, v0, v1)
    area, ux, uy, u0, u1, v0, v1 = best
    corners = [
        (u * ux - v * uy, u * uy + v * ux)
        for u, v in ((u0, v0), (u1, v0), (u1, v1), (u0, v1))
    ]
    return BoundingRect(_rect_polygon(corners), area, area == 0.0, mode)


# --- dispersion statistics ----------------------------------------------------


def dispersion_stats(points: list[Coord], eps: float = 1e-9) -> DispersionStats:
    """Mean center, standard distance, and standard-deviational-ellipse axes."""
    n = len(points)
    if n == 0:
        raise TooFewPoints("need at least one point")
    cx = sum(p[0] for p in points) / n
    cy = sum(p[1] for p in points) / n
    dev = [(p[0] - cx, p[1] - cy) for p in points]
    sd = math.sqrt(sum(dx * dx + dy * dy for dx, dy in dev) / n)
    if sd <= eps:
        raise DegenerateOrientation(
            "all points coincide; no orientation", (cx, cy), 0.0
        )
    sxx = sum(dx * dx for dx, dy in dev)
    syy = sum(dy * dy for dx, dy in dev)
    sxy = sum(dx * dy for dx, dy in dev)
    # principal axis of the deviation scatter
    if abs(sxy) <= 1e-15 * max(sxx, syy):
        theta = 0.0 if sxx >= syy else math.pi / 2.0
    else:
        lam = 0.5 * ((sxx + syy) + math.hypot(sxx - syy, 2.0 * sxy))
        theta = math.atan2(lam - sxx, sxy)
    theta %= math.pi
    ct, st = math.cos(theta), math.sin(theta)
    var_major = sum((dx * ct + dy * st) ** 2 for dx, dy in dev) / n
    var_minor = sum((-dx * st + dy * ct) ** 2 for dx, dy in dev) / n
    if var_minor > var_major:  # guard against axis swap at numeric ties
        theta = (theta + math.pi / 2.0) % math.pi
        var_major, var_minor = var_minor, var_major
    return DispersionStats(
        mean_center=(cx, cy),
        standard_distance=sd,
        orientation_deg=math.degrees(theta) % 180.0,
        sigma_major=math.sqrt(var_major),
        sigma_minor=math.sqrt(max(var_minor, 0.0)),
    )


# --- nearest connector ---------------------------------------------------------


def nearest_connector(a: PolyLine, b: PolyLine) -> tuple[PolyLine, float]:
    """Shortest segment between two polylines.

    Ties broken by the smallest (x, y) of the endpoint on `a`. Crossing inputs
    return a coincident-point connector with distance 0.
    """
    if not isinstance(a, PolyLine) or not isinstance(b, PolyLine):
        raise WrongGeometryKind("nearest connector needs two polylines")
    best = None  # (dist, ax, ay, bx, by)
    for part_a in a.parts:
        for (ax0, ay0), (ax1, ay1) in zip(part_a, part_a[1:]):
            for part_b in b.parts:
                for (bx0, by0), (bx1, by1) in zip(part_b, part_b[1:]):
                    s, t, dist = kernels.seg_seg_closest(
                        ax0, ay0, ax1, ay1, bx0, by0, bx1, by1
                    )
                    pa = (ax0 + s * (ax1 - ax0), ay0 + s * (ay1 - ay0))
                    pb = (bx0 + t * (bx1 - bx0), by0 + t * (by1 - by0))
                    cand = (dist, pa[0], pa[1], pb[0], pb[1])
                    if best is None:
                        best = cand
                        continue
                    if dist < best[0] - 1e-12:
                        best = cand
                    elif abs(dist - best[0]) <= 1e-12 and cand[1:3] < best[1:3]:
                        best = cand
    dist, ax, ay, bx, by = best
    return PolyLine((((ax, ay), (bx, by)),)), dist


# --- web-mercator reprojection -------------------------------------------------

MERCATOR_RADIUS = 6378137.0
MAX_MERCATOR_LAT = 85.06


def reproject(c: Coord, from_crs: str, to_crs: str) -> Coord:
    """Spherical-Mercator round trip between EPSG:4326 and EPSG:3857."""
    if from_crs == to_crs:
        return c
    x, y = c
    if from_crs == "EPSG:4326" and to_crs == "EPSG:3857":
        lon, lat = x, y
        if abs(lat) >= MAX_MERCATOR_LAT:
            raise LatitudeOutOfRange(f"|{lat}| >= {MAX_MERCATOR_LAT}")
        mx = MERCATOR_RADIUS * math.radians(lon)
        # asinh(tan(phi)) == ln(tan(pi/4 + phi/2)), exact at the equator
        my = MERCATOR_RADIUS * math.asinh(math.tan(math.radians(lat)))
        return (mx, my)
    if from_crs == "EPSG:3857" and to_crs == "EPSG:4326":
        lon = math.degrees(x / MERCATOR_RADIUS)
        lat = math.degrees(2.0 * math.atan(math.exp(y / MERCATOR_RADIUS)) - math.pi / 2.0)
        return (lon, lat)
    raise UnsupportedCrsPair(f"{from_crs} -> {to_crs}")
