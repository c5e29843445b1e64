"""Buffer construction: outward, inward (boundary-depth), and multi-ring.

Arcs are discretized with a fixed number of chord segments per quarter turn;
vertices lie on the true circle, so discretized areas converge to the analytic
value from below.
"""

from __future__ import annotations

import math

from ..errors import (
    InvalidGeometry,
    NonPositiveDistance,
    OpenBoundary,
    UnsortedDistances,
    WrongGeometryKind,
)
from ..model import Coord, Geometry, MultiPoint, Point, PolyLine, Polygon
from .config import DEFAULT_CONFIG, GeometryConfig
from .overlay import boolean_op, union_many
from .measures import ensure_ring_winding


def _disc_ring(cx: float, cy: float, r: float, seg_per_quadrant: int) -> tuple[Coord, ...]:
    n = 4 * seg_per_quadrant
    pts = tuple(
        (cx + r * math.cos(2.0 * math.pi * i / n), cy + r * math.sin(2.0 * math.pi * i / n))
        for i in range(n)
    )
    return pts + (pts[0],)  # CCW; orientation fixed by callers


def _arc(cx, cy, r, a0, a1, steps):
    return [
        (cx + r * math.cos(a0 + (a1 - a0) * i / steps), cy + r * math.sin(a0 + (a1 - a0) * i / steps))
        for i in range(steps + 1)
    ]


def _capsule_ring(p: Coord, q: Coord, r: float, seg_per_quadrant: int) -> tuple[Coord, ...]:
    """CCW stadium around segment pq: two sides plus semicircular caps."""
    px, py = p
    qx, qy = q
    ux, uy = qx - px, qy - py
    length = math.hypot(ux, uy)
    ux, uy = ux / length, uy / length
    theta = math.atan2(uy, ux)
    steps = 2 * seg_per_quadrant
    ring = []
    ring.extend(_arc(qx, qy, r, theta - math.pi / 2.0, theta + math.pi / 2.0, steps))
    ring.extend(_arc(px, py, r, theta + math.pi / 2.0, theta + 3.0 * math.pi / 2.0, steps))
    out = [ring[0]]
    for pt in ring[1:]:
        if pt != out[-1]:
            out.append(pt)
    if out[0] != out[-1]:
        out.append(out[0])
    return tuple(out)


def _orient(poly: Polygon) -> Polygon:
    """Normalize a single-ring region to shapefile outer-clockwise winding."""
    return Polygon(tuple(ensure_ring_winding(r, clockwise=True) for r in poly.rings))


def buffer(g: Geometry, distance: float, cfg: GeometryConfig = DEFAULT_CONFIG) -> Polygon:
    """Disc-Minkowski buffer: union of per-segment stadiums and vertex discs."""
    if distance <= 0:
        raise NonPositiveDistance(f"buffer distance must be > 0, got {distance}")
    k = cfg.arc_segments_per_quadrant
    eps = cfg.snap_epsilon

    if isinstance(g, Point):
        return _orient(Polygon((_disc_ring(g.x, g.y, distance, k),)))
    if isinstance(g, MultiPoint):
        sets = [[_disc_ring(x, y, distance, k)] for x, y in g.coords]
        return union_many(sets, eps)
    if isinstance(g, (PolyLine, Polygon)):
        parts = g.parts if isinstance(g, PolyLine) else g.rings
        sets = []
        for part in parts:
            emitted = False
            for a, b in zip(part, part[1:]):
                if math.hypot(b[0] - a[0], b[1] - a[1]) <= eps:
                    continue
                sets.append([_capsule_ring(a, b, distance, k)])
                emitted = True
            if not emitted and part:
                # a fully degenerate part still buffers to its vertex disc
                sets.append([_disc_ring(part[0][0], part[0][1], distance, k)])
        if isinstance(g, Polygon):
            sets.append(list(g.rings))
        if not sets:
            raise InvalidGeometry("geometry has no extent to buffer")
        return union_many(sets, eps)
    raise WrongGeometryKind(f"cannot buffer {type(g).__name__}")


def _closed_region(g: Geometry) -> Polygon:
    if isinstance(g, Polygon):
        return g
    if isinstance(g, PolyLine):
        rings = []
        for part in g.parts:
            if part[0] != part[-1]:
                raise OpenBoundary("polyline boundary is not closed")
            if len(part) < 4:
                raise OpenBoundary("closed boundary needs at least 3 distinct vertices")
            rings.append(ensure_ring_winding(tuple(part), clockwise=True))
        return Polygon(tuple(rings))
    raise WrongGeometryKind("inward buffer needs a closed polyline or polygon")


def inward_buffer(g: Geometry, distance: float, cfg: GeometryConfig = DEFAULT_CONFIG) -> Polygon:
    """Band of the enclosed region within `distance` of its boundary.

    Equals region minus its erosion; when the erosion is empty the whole
    region is returned.
    """
    if distance <= 0:
        raise NonPositiveDistance(f"distance must be > 0, got {distance}")
    region = _closed_region(g)
    boundary = PolyLine(tuple(region.rings))
    band = buffer(boundary, distance, cfg)
    return boolean_op("intersection", region, band, cfg.snap_epsilon)


def multi_ring_buffer(
    g: Geometry, distances: list[float], cfg: GeometryConfig = DEFAULT_CONFIG
) -> list[tuple[Polygon, float]]:
    """Concentric buffer rings: ring_i = buffer(d_i) minus buffer(d_{i-1})."""
    if not distances:
        raise UnsortedDistances("need at least one distance")
    if any(d <= 0 for d in distances):
        raise NonPositiveDistance("all distances must be > 0")
    if any(b <= a for a, b in zip(distances, distances[1:])):
        raise UnsortedDistances(f"distances must be strictly ascending: {distances}")
    discs = [buffer(g, d, cfg) for d in distances]
    rings: list[tuple[Polygon, float]] = [(discs[0], distances[0])]
    for prev, cur, d in zip(discs, discs[1:], distances[1:]):
        rings.append((boolean_op("difference", cur, prev, cfg.snap_epsilon), d))
    return rings
