"""Spatial relationship tests between geometries (planar, epsilon-tolerant)."""

from __future__ import annotations

import math

from ..model import Geometry, MultiPoint, NullShape, Point, PolyLine, Polygon
from . import kernels


def _segments(g: Geometry):
    if isinstance(g, PolyLine):
        parts = g.parts
    elif isinstance(g, Polygon):
        parts = g.rings
    else:
        return
    for part in parts:
        for a, b in zip(part, part[1:]):
            yield (a[0], a[1], b[0], b[1])


def _points(g: Geometry):
    if isinstance(g, Point):
        yield g.coord
    elif isinstance(g, MultiPoint):
        yield from g.coords
    elif isinstance(g, PolyLine):
        for p in g.parts:
            yield from p
    elif isinstance(g, Polygon):
        for r in g.rings:
            yield from r


def point_in_polygon(x: float, y: float, poly: Polygon, eps: float) -> bool:
    """Inside-or-on with even-odd parity."""
    if poly.is_empty:
        return False
    if kernels.point_on_rings(x, y, poly.rings, eps):
        return True
    return kernels.point_in_rings(x, y, poly.rings)


def _segs_cross(s1, s2, eps) -> bool:
    ax, ay, bx, by = s1
    cx, cy, dx, dy = s2
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    li = math.hypot(rx, ry)
    lj = math.hypot(sx, sy)
    if li <= eps or lj <= eps:
        return False
    denom = rx * sy - ry * sx
    qpx, qpy = cx - ax, cy - ay
    if abs(denom) <= 1e-12 * li * lj:
        # parallel: touching counts as crossing only if collinear and overlapping
        if abs(qpx * ry - qpy * rx) > eps * li:
            return False
        t0 = (qpx * rx + qpy * ry) / (li * li)
        t1 = ((dx - ax) * rx + (dy - ay) * ry) / (li * li)
        lo, hi = min(t0, t1), max(t0, t1)
        return hi >= -eps / li and lo <= 1.0 + eps / li
    t = (qpx * sy - qpy * sx) / denom
    u = (qpx * ry - qpy * rx) / denom
    tol_i = eps / li
    tol_j = eps / lj
    return -tol_i <= t <= 1.0 + tol_i and -tol_j <= u <= 1.0 + tol_j


def geoms_intersect(a: Geometry, b: Geometry, eps: float = 1e-9) -> bool:
    """Share at least one point (boundary contact counts)."""
    if isinstance(a, NullShape) or isinstance(b, NullShape):
        return False
    # point containment either way
    if isinstance(b, Polygon):
        for x, y in _points(a):
            if point_in_polygon(x, y, b, eps):
                return True
    if isinstance(a, Polygon):
        for x, y in _points(b):
            if point_in_polygon(x, y, a, eps):
                return True
    segs_a = list(_segments(a))
    segs_b = list(_segments(b))
    for pa in _points(a):
        if not segs_b and not isinstance(b, Polygon):
            for pb in _points(b):
                if math.hypot(pa[0] - pb[0], pa[1] - pb[1]) <= eps:
                    return True
        for sb in segs_b:
            if kernels.dist_point_segment(pa[0], pa[1], *sb) <= eps:
                return True
    for pb in _points(b):
        for sa in segs_a:
            if kernels.dist_point_segment(pb[0], pb[1], *sa) <= eps:
                return True
    for sa in segs_a:
        for sb in segs_b:
            if _segs_cross(sa, sb, eps):
                return True
    return False


def geom_contains(a: Geometry, b: Geometry, eps: float = 1e-9) -> bool:
    """Every point of b lies inside-or-on a (a must have interior for non-point b)."""
    if isinstance(a, NullShape) or isinstance(b, NullShape):
        return False
    if isinstance(a, Polygon):
        pts = list(_points(b))
        if not pts:
            return False
        if not all(point_in_polygon(x, y, a, eps) for x, y in pts):
            return False
        # segment midpoints guard against rings that exit and re-enter
        for (x1, y1, x2, y2) in _segments(b):
            mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
            if not point_in_polygon(mx, my, a, eps):
                return False
        return True
    if isinstance(a, PolyLine):
        segs = list(_segments(a))
        return all(
            any(kernels.dist_point_segment(x, y, *s) <= eps for s in segs)
            for x, y in _points(b)
        ) and not isinstance(b, Polygon)
    if isinstance(a, (Point, MultiPoint)):
        apts = list(_points(a))
        bpts = list(_points(b))
        return bool(bpts) and all(
            any(math.hypot(x - ax, y - ay) <= eps for ax, ay in apts) for x, y in bpts
        ) and isinstance(b, (Point, MultiPoint))
    return False


def geom_within(a: Geometry, b: Geometry, eps: float = 1e-9) -> bool:
    return geom_contains(b, a, eps)
