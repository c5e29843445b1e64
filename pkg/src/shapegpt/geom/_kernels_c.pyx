# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py. Keep the two modules in lockstep: same
functions, same semantics, same tolerances; only the loops are typed."""

from libc.math cimport hypot, fabs
from libc.stdlib cimport free, malloc

BACKEND = "cython"


def signed_area(ring):
    """Shoelace area, counter-clockwise positive. Closure vertex optional."""
    cdef Py_ssize_t n = len(ring)
    if n < 3:
        return 0.0
    cdef double total = 0.0
    cdef double x0, y0, x1, y1
    x0 = ring[n - 1][0]
    y0 = ring[n - 1][1]
    cdef Py_ssize_t i
    for i in range(n):
        x1 = ring[i][0]
        y1 = ring[i][1]
        total += x0 * y1 - x1 * y0
        x0 = x1
        y0 = y1
    return 0.5 * total


def point_in_rings(double x, double y, rings):
    """Even-odd crossing parity over all rings (boundary points undefined)."""
    cdef bint inside = False
    cdef Py_ssize_t n, i
    cdef double x0, y0, x1, y1, xc
    for ring in rings:
        n = len(ring)
        if n < 3:
            continue
        x0 = ring[n - 1][0]
        y0 = ring[n - 1][1]
        for i in range(n):
            x1 = ring[i][0]
            y1 = ring[i][1]
            if (y0 > y) != (y1 > y):
                xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
                if xc > x:
                    inside = not inside
            x0 = x1
            y0 = y1
    return inside


cdef inline double _dist_point_segment(double px, double py, double ax, double ay,
                                       double bx, double by) nogil:
    cdef double dx = bx - ax
    cdef double dy = by - ay
    cdef double d2 = dx * dx + dy * dy
    cdef double t
    if d2 <= 0.0:
        return hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / d2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return hypot(px - (ax + t * dx), py - (ay + t * dy))


def dist_point_segment(double px, double py, double ax, double ay, double bx, double by):
    return _dist_point_segment(px, py, ax, ay, bx, by)


def point_on_rings(double x, double y, rings, double eps):
    """Within eps of any ring boundary segment."""
    cdef Py_ssize_t n, i
    cdef double x0, y0, x1, y1
    for ring in rings:
        n = len(ring)
        x0 = ring[n - 1][0]
        y0 = ring[n - 1][1]
        for i in range(n):
            x1 = ring[i][0]
            y1 = ring[i][1]
            if _dist_point_segment(x, y, x0, y0, x1, y1) <= eps:
                return True
            x0 = x1
            y0 = y1
    return False


def seg_seg_closest(double ax, double ay, double bx, double by,
                    double cx, double cy, double dx_, double dy_):
    """Closest points between segments AB and CD; returns (s, t, dist)."""
    cdef double ux = bx - ax, uy = by - ay
    cdef double vx = dx_ - cx, vy = dy_ - cy
    cdef double wx = ax - cx, wy = ay - cy
    cdef double a = ux * ux + uy * uy
    cdef double b = ux * vx + uy * vy
    cdef double c = vx * vx + vy * vy
    cdef double d = ux * wx + uy * wy
    cdef double e = vx * wx + vy * wy
    cdef double denom = a * c - b * b
    cdef double s, t, big
    big = a if a > c else c
    if big < 1.0:
        big = 1.0
    if denom > 1e-14 * big:
        s = (b * e - c * d) / denom
        s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    else:
        s = 0.0
    if c > 0.0:
        t = (b * s + e) / c
        t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
    else:
        t = 0.0
    if a > 0.0:
        s = (b * t - d) / a
        s = 0.0 if s < 0.0 else (1.0 if s > 1.0 else s)
    cdef double px = ax + s * ux, py = ay + s * uy
    cdef double qx = cx + t * vx, qy = cy + t * vy
    return s, t, hypot(px - qx, py - qy)


def segment_cuts(segs, double eps):
    """All pairwise intersection cut points among segments (x-sweep pruned)."""
    cdef Py_ssize_t n = len(segs)
    cuts = [[] for _ in range(n)]
    if n == 0:
        return cuts

    cdef double *sx1 = <double *> malloc(n * sizeof(double))
    cdef double *sy1 = <double *> malloc(n * sizeof(double))
    cdef double *sx2 = <double *> malloc(n * sizeof(double))
    cdef double *sy2 = <double *> malloc(n * sizeof(double))
    cdef double *slen = <double *> malloc(n * sizeof(double))
    cdef double *bxmin = <double *> malloc(n * sizeof(double))
    cdef double *bxmax = <double *> malloc(n * sizeof(double))
    cdef double *bymin = <double *> malloc(n * sizeof(double))
    cdef double *bymax = <double *> malloc(n * sizeof(double))
    cdef Py_ssize_t *order = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    if not (sx1 and sy1 and sx2 and sy2 and slen and bxmin and bxmax and bymin and bymax and order):
        free(sx1); free(sy1); free(sx2); free(sy2); free(slen)
        free(bxmin); free(bxmax); free(bymin); free(bymax); free(order)
        raise MemoryError()

    cdef Py_ssize_t i, j, oi, oj
    cdef double x1, y1, x2, y2
    try:
        for i in range(n):
            seg = segs[i]
            x1 = seg[0]; y1 = seg[1]; x2 = seg[2]; y2 = seg[3]
            sx1[i] = x1; sy1[i] = y1; sx2[i] = x2; sy2[i] = y2
            slen[i] = hypot(x2 - x1, y2 - y1)
            bxmin[i] = (x1 if x1 < x2 else x2) - eps
            bxmax[i] = (x1 if x1 > x2 else x2) + eps
            bymin[i] = (y1 if y1 < y2 else y2) - eps
            bymax[i] = (y1 if y1 > y2 else y2) + eps

        xmins = []
        for i in range(n):
            xmins.append(bxmin[i])
        order_py = sorted(range(n), key=xmins.__getitem__)
        for i in range(n):
            order[i] = order_py[i]

        cdef_block(n, eps, sx1, sy1, sx2, sy2, slen, bxmin, bxmax, bymin, bymax, order, cuts)
    finally:
        free(sx1); free(sy1); free(sx2); free(sy2); free(slen)
        free(bxmin); free(bxmax); free(bymin); free(bymax); free(order)
    return cuts


cdef void cdef_block(Py_ssize_t n, double eps,
                     double *sx1, double *sy1, double *sx2, double *sy2,
                     double *slen, double *bxmin, double *bxmax,
                     double *bymin, double *bymax, Py_ssize_t *order, list cuts):
    cdef Py_ssize_t oi, oj, i, j
    cdef double ax, ay, bx, by, rx, ry, li, lj
    cdef double cx, cy, dx_, dy_, sx, sy, denom, qpx, qpy, t, u
    cdef double tol_i, tol_j, px, py, ili2, ilj2
    for oi in range(n):
        i = order[oi]
        li = slen[i]
        if li <= 0.0:
            continue
        ax = sx1[i]; ay = sy1[i]; bx = sx2[i]; by = sy2[i]
        rx = bx - ax; ry = by - ay
        for oj in range(oi + 1, n):
            j = order[oj]
            if bxmin[j] > bxmax[i]:
                break
            lj = slen[j]
            if lj <= 0.0:
                continue
            if bymin[j] > bymax[i] or bymax[j] < bymin[i]:
                continue
            cx = sx1[j]; cy = sy1[j]; dx_ = sx2[j]; dy_ = sy2[j]
            sx = dx_ - cx; sy = dy_ - cy
            denom = rx * sy - ry * sx
            qpx = cx - ax; qpy = cy - ay
            if fabs(denom) > 1e-12 * li * lj:
                t = (qpx * sy - qpy * sx) / denom
                u = (qpx * ry - qpy * rx) / denom
                tol_i = eps / li
                tol_j = eps / lj
                if -tol_i <= t <= 1.0 + tol_i and -tol_j <= u <= 1.0 + tol_j:
                    px = ax + t * rx
                    py = ay + t * ry
                    if tol_i < t < 1.0 - tol_i:
                        (<list> cuts[i]).append((t, px, py))
                    if tol_j < u < 1.0 - tol_j:
                        (<list> cuts[j]).append((u, px, py))
            else:
                if fabs(qpx * ry - qpy * rx) > eps * li:
                    continue
                ili2 = 1.0 / (li * li)
                t = ((cx - ax) * rx + (cy - ay) * ry) * ili2
                if eps / li < t < 1.0 - eps / li:
                    (<list> cuts[i]).append((t, ax + t * rx, ay + t * ry))
                t = ((dx_ - ax) * rx + (dy_ - ay) * ry) * ili2
                if eps / li < t < 1.0 - eps / li:
                    (<list> cuts[i]).append((t, ax + t * rx, ay + t * ry))
                ilj2 = 1.0 / (lj * lj)
                u = ((ax - cx) * sx + (ay - cy) * sy) * ilj2
                if eps / lj < u < 1.0 - eps / lj:
                    (<list> cuts[j]).append((u, cx + u * sx, cy + u * sy))
                u = ((bx - cx) * sx + (by - cy) * sy) * ilj2
                if eps / lj < u < 1.0 - eps / lj:
                    (<list> cuts[j]).append((u, cx + u * sx, cy + u * sy))


def clip_ring_halfplane(ring, double a, double b, double c):
    """Sutherland-Hodgman step keeping a*x + b*y <= c; returns the input list
    object unchanged when nothing is clipped."""
    cdef Py_ssize_t n = len(ring)
    if n == 0:
        return []
    cdef double *fs = <double *> malloc(n * sizeof(double))
    if not fs:
        raise MemoryError()
    cdef Py_ssize_t i, inside = 0
    cdef double x, y, x0, y0, x1, y1, f0, f1, t
    try:
        for i in range(n):
            pt = ring[i]
            x = pt[0]; y = pt[1]
            fs[i] = a * x + b * y - c
            if fs[i] <= 0.0:
                inside += 1
        if inside == n:
            return ring
        if inside == 0:
            return []
        out = []
        x0 = ring[n - 1][0]
        y0 = ring[n - 1][1]
        f0 = fs[n - 1]
        for i in range(n):
            x1 = ring[i][0]
            y1 = ring[i][1]
            f1 = fs[i]
            if f0 <= 0.0:
                out.append((x0, y0))
                if f1 > 0.0:
                    t = f0 / (f0 - f1)
                    out.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
            elif f1 <= 0.0:
                t = f0 / (f0 - f1)
                out.append((x0 + t * (x1 - x0), y0 + t * (y1 - y0)))
            x0 = x1; y0 = y1; f0 = f1
        return out
    finally:
        free(fs)


def ray_first_hit(double mx, double my, double nx, double ny, segs, Py_ssize_t skip):
    """Smallest t > 1e-12 where ray m + t*n meets any segment (index != skip)."""
    cdef double best = float("inf")
    cdef Py_ssize_t idx, n = len(segs)
    cdef double ax, ay, bx, by, ex, ey, denom, t, w
    for idx in range(n):
        if idx == skip:
            continue
        seg = segs[idx]
        ax = seg[0]; ay = seg[1]; bx = seg[2]; by = seg[3]
        ex = bx - ax; ey = by - ay
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
