"""Boolean overlay and polygonization via a snapped planar arrangement.

All region operations share one engine: input segments are noded at every
pairwise intersection (with epsilon snapping), directed half-edges are walked
into faces by angular order, each face is classified by an interior probe
point against the original ring sets, and the requested region is read back
off the face classification. This face-based formulation is immune to the
degeneracies that break pairwise clippers (coincident edges, shared vertices,
tangent rings).
"""

from __future__ import annotations

import math
from bisect import bisect_left, insort

from ..errors import InvalidGeometry
from ..model import Polygon
from . import kernels

# spatial-hash cell = SNAP_CELL_FACTOR * eps: coarse enough that float error in
# key computation cannot skip a neighboring cell at coordinate magnitudes ~1e7
SNAP_CELL_FACTOR = 4096.0


class _NodeIndex:
    """Snap points within eps to shared node ids."""

    def __init__(self, eps: float):
        self.eps = eps
        self.cell = SNAP_CELL_FACTOR * eps
        self.coords: list[tuple[float, float]] = []
        self._grid: dict[tuple[int, int], list[int]] = {}

    def _key(self, x: float, y: float) -> tuple[int, int]:
        return (int(math.floor(x / self.cell)), int(math.floor(y / self.cell)))

    def add(self, x: float, y: float) -> int:
        kx, ky = self._key(x, y)
        eps = self.eps
        best = -1
        best_d = eps
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self._grid.get((kx + dx, ky + dy), ()):
                    cx, cy = self.coords[idx]
                    d = math.hypot(cx - x, cy - y)
                    if d <= best_d:
                        best_d = d
                        best = idx
        if best >= 0:
            return best
        idx = len(self.coords)
        self.coords.append((x, y))
        self._grid.setdefault((kx, ky), []).append(idx)
        return idx


class Arrangement:
    """Planar subdivision of a set of segments with face walks."""

    def __init__(self, segment_groups: list[list[tuple[float, float, float, float]]], eps: float):
        self.eps = eps
        segs = [s for group in segment_groups for s in group]
        self.nodes = _NodeIndex(eps)
        self.edges: list[tuple[int, int]] = []
        self._edge_ids: dict[tuple[int, int], int] = {}
        self._build(segs)
        self._sort_adjacency()
        self._walk_faces()

    # -- construction --------------------------------------------------------

    def _build(self, segs):
        eps = self.eps
        live = []
        for (x1, y1, x2, y2) in segs:
            if math.hypot(x2 - x1, y2 - y1) > eps:
                live.append((x1, y1, x2, y2))
        cuts = kernels.segment_cuts(live, eps)
        add_node = self.nodes.add
        for seg, seg_cuts in zip(live, cuts):
            x1, y1, x2, y2 = seg
            stops = [(0.0, x1, y1), (1.0, x2, y2)]
            stops.extend(seg_cuts)
            stops.sort(key=lambda s: s[0])
            chain = []
            for _, x, y in stops:
                nid = add_node(x, y)
                if not chain or chain[-1] != nid:
                    chain.append(nid)
            for u, v in zip(chain, chain[1:]):
                self._add_edge(u, v)

    def _add_edge(self, u: int, v: int):
        if u == v:
            return
        key = (u, v) if u < v else (v, u)
        if key in self._edge_ids:
            return
        self._edge_ids[key] = len(self.edges)
        self.edges.append(key)

    def _sort_adjacency(self):
        coords = self.nodes.coords
        adj: dict[int, list[tuple[float, int]]] = {}
        for (u, v) in self.edges:
            ux, uy = coords[u]
            vx, vy = coords[v]
            adj.setdefault(u, []).append((math.atan2(vy - uy, vx - ux), v))
            adj.setdefault(v, []).append((math.atan2(uy - vy, ux - vx), u))
        for lst in adj.values():
            lst.sort()
        self.adj = adj

    def next_halfedge(self, u: int, v: int) -> tuple[int, int]:
        """Face-walk successor (interior kept on the left)."""
        coords = self.nodes.coords
        ux, uy = coords[u]
        vx, vy = coords[v]
        theta = math.atan2(uy - vy, ux - vx)  # direction v -> u
        lst = self.adj[v]
        # next outgoing edge clockwise (strictly decreasing angle) from theta
        i = bisect_left(lst, (theta, -1)) - 1
        if i < 0:
            i = len(lst) - 1
        ang, w = lst[i]
        if w == u and ang == theta and len(lst) > 1:
            i = i - 1 if i > 0 else len(lst) - 1
            _, w = lst[i]
        return (v, w)

    def _walk_faces(self):
        self.walks: list[list[tuple[int, int]]] = []
        self.walk_of: dict[tuple[int, int], int] = {}
        for (u0, v0) in self.edges:
            for start in ((u0, v0), (v0, u0)):
                if start in self.walk_of:
                    continue
                wid = len(self.walks)
                walk = []
                cur = start
                while cur not in self.walk_of:
                    self.walk_of[cur] = wid
                    walk.append(cur)
                    cur = self.next_halfedge(*cur)
                self.walks.append(walk)

    # -- geometry of walks ----------------------------------------------------

    def walk_ring(self, wid: int) -> list[tuple[float, float]]:
        coords = self.nodes.coords
        return [coords[u] for (u, v) in self.walks[wid]]

    def walk_area(self, wid: int) -> float:
        return kernels.signed_area(self.walk_ring(wid))

    def _all_segs(self):
        try:
            return self._segs_cache
        except AttributeError:
            coords = self.nodes.coords
            self._segs_cache = [
                (coords[u][0], coords[u][1], coords[v][0], coords[v][1])
                for (u, v) in self.edges
            ]
            return self._segs_cache

    def face_probe(self, wid: int) -> tuple[float, float]:
        """A point strictly inside the face lying to the left of walk `wid`."""
        coords = self.nodes.coords
        segs = self._all_segs()
        ring = self.walk_ring(wid)
        positive = kernels.signed_area(ring) > 0.0
        walk = self.walks[wid]
        # try edges longest-first: more numeric headroom
        order = sorted(
            range(len(walk)),
            key=lambda i: -_edge_len(coords, walk[i]),
        )
        for i in order[:24]:
            u, v = walk[i]
            ux, uy = coords[u]
            vx, vy = coords[v]
            ex, ey = vx - ux, vy - uy
            elen = math.hypot(ex, ey)
            if elen <= 0.0:
                continue
            nx, ny = -ey / elen, ex / elen  # left normal
            mx, my = (ux + vx) / 2.0, (uy + vy) / 2.0
            key = (u, v) if u < v else (v, u)
            t_hit = kernels.ray_first_hit(mx, my, nx, ny, segs, self._edge_ids[key])
            if t_hit == math.inf:
                delta = max(elen, 1.0)
            else:
                delta = t_hit / 2.0
            if delta <= 0.0:
                continue
            for shrink in (1.0, 0.25, 0.0625):
                px, py = mx + nx * delta * shrink, my + ny * delta * shrink
                inside = kernels.point_in_rings(px, py, [ring])
                if inside == positive:
                    return (px, py)
        # last resort: centroid of the ring (fine for convex faces)
        return _ring_centroid(ring)


def _edge_len(coords, he) -> float:
    (u, v) = he
    ux, uy = coords[u]
    vx, vy = coords[v]
    return math.hypot(vx - ux, vy - uy)


def _ring_centroid(ring) -> tuple[float, float]:
    n = max(len(ring), 1)
    return (sum(p[0] for p in ring) / n, sum(p[1] for p in ring) / n)


# --- public region operations -----------------------------------------------


def rings_to_segments(rings) -> list[tuple[float, float, float, float]]:
    segs = []
    for ring in rings:
        pts = list(ring)
        if len(pts) >= 2 and pts[0] == pts[-1]:
            pts = pts[:-1]
        n = len(pts)
        for i in range(n):
            x1, y1 = pts[i]
            x2, y2 = pts[(i + 1) % n]
            segs.append((x1, y1, x2, y2))
    return segs


def _close(ring) -> tuple:
    return tuple(ring) + (ring[0],)


def merge_regions(ring_sets, predicate, eps) -> Polygon:
    """Region {p : predicate(membership vector of p)} as a shapefile polygon.

    ring_sets: one even-odd ring collection per input region. The predicate
    maps a tuple of booleans (point inside region k) to kept/dropped.
    """
    groups = [rings_to_segments(rs) for rs in ring_sets]
    if not any(groups):
        return Polygon(())
    arr = Arrangement(groups, eps)
    kept: list[bool] = []
    for wid in range(len(arr.walks)):
        px, py = arr.face_probe(wid)
        membership = tuple(kernels.point_in_rings(px, py, rs) for rs in ring_sets)
        kept.append(bool(predicate(membership)))

    boundary: dict[int, list[tuple[float, int]]] = {}  # node -> [(angle, dest)]
    coords = arr.nodes.coords
    count = 0
    for (u, v) in arr.edges:
        kl = kept[arr.walk_of[(u, v)]]
        kr = kept[arr.walk_of[(v, u)]]
        if kl == kr:
            continue
        a, b = (u, v) if kl else (v, u)  # kept face on the left
        ax, ay = coords[a]
        bx, by = coords[b]
        insort(boundary.setdefault(a, []), (math.atan2(by - ay, bx - ax), b))
        count += 1

    rings = []
    consumed: set[tuple[int, int]] = set()
    for start_node, outs in list(boundary.items()):
        for _, first_dest in list(outs):
            start = (start_node, first_dest)
            if start in consumed:
                continue
            ring_nodes = []
            cur = start
            for _ in range(count + 1):
                consumed.add(cur)
                ring_nodes.append(cur[0])
                u, v = cur
                lst = boundary.get(v)
                if not lst:
                    ring_nodes = []
                    break
                ux, uy = coords[u]
                vx, vy = coords[v]
                theta = math.atan2(uy - vy, ux - vx)
                i = bisect_left(lst, (theta, -1)) - 1
                if i < 0:
                    i = len(lst) - 1
                cur = (v, lst[i][1])
                if cur == start:
                    break
                if cur in consumed:  # irregular pinch; drop the partial walk
                    ring_nodes = []
                    break
            ring = _clean_ring([coords[n] for n in ring_nodes])
            if ring:
                rings.append(ring)

    # region-left walks give CCW outers / CW holes; shapefile wants the reverse
    return Polygon(tuple(_close(tuple(reversed(r))) for r in rings))


def _clean_ring(pts):
    """Drop consecutive duplicates and spur backtracks; None if degenerate."""
    out = []
    for p in pts:
        if out and out[-1] == p:
            continue
        if len(out) >= 2 and out[-2] == p:
            out.pop()
            continue
        out.append(p)
    # same cleanup across the cyclic seam
    changed = True
    while changed and len(out) >= 3:
        changed = False
        if out[0] == out[-1]:
            out.pop()
            changed = True
        elif out[-2] == out[0]:  # spur tip at the last vertex
            out.pop()
            changed = True
        elif out[-1] == out[1]:  # spur tip at the first vertex
            out.pop(0)
            changed = True
    if len(out) < 3 or kernels.signed_area(out) == 0.0:
        return None
    return out


def boolean_op(op: str, a: Polygon, b: Polygon, eps: float) -> Polygon:
    """intersection | union | difference of two even-odd polygons."""
    if op not in ("intersection", "union", "difference"):
        raise ValueError(f"unknown boolean op {op!r}")
    for poly in (a, b):
        for ring in poly.rings:
            if ring_self_intersects(ring, eps):
                raise InvalidGeometry("self-intersecting ring")
    if a.is_empty and b.is_empty:
        return Polygon(())
    if a.is_empty:
        return b if op == "union" else Polygon(())
    if b.is_empty:
        return Polygon(()) if op == "intersection" else a

    if op == "intersection":
        pred = lambda m: m[0] and m[1]
    elif op == "union":
        pred = lambda m: m[0] or m[1]
    else:
        pred = lambda m: m[0] and not m[1]
    return merge_regions([a.rings, b.rings], pred, eps)


def union_many(ring_sets, eps) -> Polygon:
    """Union of many even-odd regions in a single arrangement pass."""
    sets = [rs for rs in ring_sets if rs]
    if not sets:
        return Polygon(())
    return merge_regions(sets, any, eps)


def polygonize_split(poly: Polygon, blade_segments, eps: float) -> list[Polygon]:
    """Faces of (polygon boundary + blades) whose interior lies in the polygon."""
    groups = [rings_to_segments(poly.rings), list(blade_segments)]
    arr = Arrangement(groups, eps)
    positives = []
    negatives = []
    for wid in range(len(arr.walks)):
        area = arr.walk_area(wid)
        if area > 0.0:
            positives.append(wid)
        elif area < 0.0:
            negatives.append(wid)

    kept_faces = {}
    for wid in positives:
        px, py = arr.face_probe(wid)
        if kernels.point_in_rings(px, py, poly.rings):
            kept_faces[wid] = {"outer": arr.walk_ring(wid), "holes": []}

    # attach each island boundary to its immediate enclosing positive walk;
    # if that enclosing face is not kept, the island is irrelevant
    pos_by_area = sorted(positives, key=lambda w: abs(arr.walk_area(w)))
    for wid in negatives:
        px, py = arr.face_probe(wid)
        for pw in pos_by_area:
            if kernels.point_in_rings(px, py, [arr.walk_ring(pw)]):
                if pw in kept_faces:
                    kept_faces[pw]["holes"].append(arr.walk_ring(wid))
                break

    out = []
    for face in kept_faces.values():
        outer = _clean_ring(list(face["outer"]))
        if not outer:
            continue
        rings = [_close(tuple(reversed(outer)))]
        for hole in face["holes"]:
            cleaned = _clean_ring(list(hole))
            if cleaned:
                rings.append(_close(tuple(reversed(cleaned))))
        out.append(Polygon(tuple(rings)))
    return out


def ring_self_intersects(ring, eps: float) -> bool:
    """Proper (interior-to-interior) self-crossing beyond snap tolerance."""
    pts = list(ring)
    if len(pts) >= 2 and pts[0] == pts[-1]:
        pts = pts[:-1]
    n = len(pts)
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        li = math.hypot(bx - ax, by - ay)
        if li <= eps:
            continue
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent segments share a vertex
            cx, cy = pts[j]
            dx, dy = pts[(j + 1) % n]
            lj = math.hypot(dx - cx, dy - cy)
            if lj <= eps:
                continue
            rx, ry = bx - ax, by - ay
            sx, sy = dx - cx, dy - cy
            denom = rx * sy - ry * sx
            if abs(denom) <= 1e-12 * li * lj:
                continue
            qpx, qpy = cx - ax, cy - ay
            t = (qpx * sy - qpy * sx) / denom
            u = (qpx * ry - qpy * rx) / denom
            tol_i = eps / li
            tol_j = eps / lj
            if tol_i < t < 1.0 - tol_i and tol_j < u < 1.0 - tol_j:
                return True
    return False
