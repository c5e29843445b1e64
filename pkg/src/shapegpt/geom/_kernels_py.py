"""Pure-Python geometry kernels: the inner loops everything else builds on.

The compiled twin in _kernels_c.pyx implements the same signatures; keep the
two in lockstep. Rings are sequences of (x, y); segments are 4-tuples
(x1, y1, x2, y2). No geometry objects at this layer.
"""

from __future__ import annotations

import math

BACKEND = "python"


def signed_area(ring) -> float:
    """Shoelace area, counter-clockwise positive. Closure vertex optional."""
    n = len(ring)
    if n < 3:
        return 0.0
    total = 0.0
    x0, y0 = ring[n - 1]
    for i in range(n):
        x1, y1 = ring[i]
        total += x0 * y1 - x1 * y0
        x0, y0 = x1, y1
    return 0.5 * total


def point_in_rings(x: float, y: float, rings) -> bool:
    """Even-odd crossing parity over all rings (boundary points undefined)."""
    inside = False
    for ring in rings:
        n = len(ring)
        if n < 3:
            continue
        x0, y0 = ring[n - 1]
        for i in range(n):
            x1, y1 = ring[i]
            if (y0 > y) != (y1 > y):
                xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
                if xc > x:
                    inside = not inside
            x0, y0 = x1, y1
    return inside


def dist_point_segment(px, py, ax, ay, bx, by) -> float:
    dx = bx - ax
    dy = by - ay
    d2 = dx * dx + dy * dy
    if d2 <= 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / d2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def point_on_rings(x, y, rings, eps) -> bool:
    """Within eps of any ring boundary segment."""
    for ring in rings:
        n = len(ring)
        x0, y0 = ring[n - 1]
        for i in range(n):
            x1, y1 = ring[i]
            if dist_point_segment(x, y, x0, y0, x1, y1) <= eps:
                return True
            x0, y0 = x1, y1
    return False


def seg_seg_closest(ax, ay, bx, by, cx, cy, dx_, dy_):
    """Closest points between segments AB and CD.

    Returns (s, t, dist) with s on AB and t on CD, both clamped to [0, 1].
    """
    ux, uy = bx - ax, by - ay
    vx, vy = dx_ - cx, dy_ - cy
    wx, wy = ax - cx, ay - cy
    a = ux * ux + uy * uy
    b = ux * vx + uy * vy
    c = vx * vx + vy * vy
    d = ux * wx + uy * wy
    e = vx * wx + vy * wy
    denom = a * c - b * b

    if denom > 1e-14 * max(a, c, 1.0):
        s = (b * e - c * d) / denom
        s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    else:
        s = 0.0
    # optimal t for that s, then re-clamp s
    if c > 0.0:
        t = (b * s + e) / c
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    else:
        t = 0.0
    if a > 0.0:
        s = (b * t - d) / a
        s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    px, py = ax + s * ux, ay + s * uy
    qx, qy = cx + t * vx, cy + t * vy
    return s, t, math.hypot(px - qx, py - qy)


def segment_cuts(segs, eps):
    """All pairwise intersection cut points among segments.

    For each segment, returns a list of (t, x, y) cut candidates strictly
    inside or touching the segment, from crossings, T-junctions, and
    collinear overlaps with every other segment. Endpoints are not included.
    Pairs are pruned by an x-interval sweep over precomputed bounds.
    """
    n = len(segs)
    cuts = [[] for _ in range(n)]
    lens = [0.0] * n
    bounds = [None] * n
    for i, (x1, y1, x2, y2) in enumerate(segs):
        lens[i] = math.hypot(x2 - x1, y2 - y1)
        bounds[i] = (
            (x1 if x1 < x2 else x2) - eps,
            (x1 if x1 > x2 else x2) + eps,
            (y1 if y1 < y2 else y2) - eps,
            (y1 if y1 > y2 else y2) + eps,
        )
    order = sorted(range(n), key=lambda k: bounds[k][0])
    for oi in range(n):
        i = order[oi]
        ax, ay, bx, by = segs[i]
        rx, ry = bx - ax, by - ay
        li = lens[i]
        if li <= 0.0:
            continue
        xmax_i = bounds[i][1]
        ymin_i, ymax_i = bounds[i][2], bounds[i][3]
        for oj in range(oi + 1, n):
            j = order[oj]
            bj = bounds[j]
            if bj[0] > xmax_i:
                break  # later segments start even further right
            lj = lens[j]
            if lj <= 0.0:
                continue
            if bj[2] > ymax_i or bj[3] < ymin_i:
                continue
            cx, cy, dx_, dy_ = segs[j]
            sx, sy = dx_ - cx, dy_ - cy
            denom = rx * sy - ry * sx
            qpx, qpy = cx - ax, cy - ay
            if abs(denom) > 1e-12 * li * lj:
                t = (qpx * sy - qpy * sx) / denom
                u = (qpx * ry - qpy * rx) / denom
                tol_i = eps / li
                tol_j = eps / lj
                if -tol_i <= t <= 1.0 + tol_i and -tol_j <= u <= 1.0 + tol_j:
                    px = ax + t * rx
                    py = ay + t * ry
                    if tol_i < t < 1.0 - tol_i:
                        cuts[i].append((t, px, py))
                    if tol_j < u < 1.0 - tol_j:
                        cuts[j].append((u, px, py))
            else:
                # parallel: collinear overlap splits both at the other's ends
                if abs(qpx * ry - qpy * rx) > eps * li:
                    continue
                ili2 = 1.0 / (li * li)
                for (px, py) in ((cx, cy), (dx_, dy_)):
                    t = ((px - ax) * rx + (py - ay) * ry) * ili2
                    if eps / li < t < 1.0 - eps / li:
                        cuts[i].append((t, ax + t * rx, ay + t * ry))
                ilj2 = 1.0 / (lj * lj)
                for (px, py) in ((ax, ay), (bx, by)):
                    u = ((px - cx) * sx + (py - cy) * sy) * ilj2
                    if eps / lj < u < 1.0 - eps / lj:
                        cuts[j].append((u, cx + u * sx, cy + u * sy))
    return cuts


def clip_ring_halfplane(ring, a, b, c):
    """Sutherland-Hodgman step: keep the side a*x + b*y <= c of an open ring.

    Returns the input list object unchanged when no vertex is clipped (the
    overwhelmingly common case in Voronoi construction), so callers can use
    an identity check to skip downstream work.
    """
    n = len(ring)
    if n == 0:
        return []
    fs = [a * x + b * y - c for x, y in ring]
    inside = sum(1 for f in fs if f <= 0.0)
    if inside == n:
        return ring
    if inside == 0:
        return []
    out = []
    x0, y0 = ring[n - 1]
    f0 = fs[n - 1]
    for i in range(n):
        x1, y1 = ring[i]
        f1 = fs[i]
        if f0 <= 0.0:
            out.append((x0, y0))
            if f1 > 0.0:
                t = f0 / (f0 - f1)
                out.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
        elif f1 <= 0.0:
            t = f0 / (f0 - f1)
            out.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
        x0, y0, f0 = x1, y1, f1
    return out


def ray_first_hit(mx, my, nx, ny, segs, skip):
    """Smallest t > 1e-12 where ray m + t*n meets any segment (index != skip).

    Returns math.inf when the ray escapes cleanly.
    """
    best = math.inf
    for idx in range(len(segs)):
        if idx == skip:
            continue
        ax, ay, bx, by = segs[idx]
        ex, ey = bx - ax, by - ay
        denom = nx * ey - ny * ex
        if denom == 0.0:
            continue
        t = ((ax - mx) * ey - (ay - my) * ex) / denom
        if t <= 1e-12 or t >= best:
            continue
        w = ((ax - mx) * ny - (ay - my) * nx) / denom
        if -1e-12 <= w <= 1.0 + 1e-12:
            best = t
    return best
