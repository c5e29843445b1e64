"""Thiessen (Voronoi) tessellation by per-seed half-plane clipping.

Each cell starts as the expanded clip extent and is cut by the perpendicular
bisector against every other seed, nearest seeds first so exhausted cells
terminate early. Feature-level tessellation densifies each feature's boundary
into seed samples and unions the sample cells per source feature.
"""

from __future__ import annotations

import math

from ..errors import DuplicateSeedsOnly, InvalidGeometry, TooFewSeeds
from ..model import Coord, Dataset, Geometry, MultiPoint, NullShape, Point, Polygon
from . import kernels
from .config import DEFAULT_CONFIG, GeometryConfig
from .measures import ensure_ring_winding
from .overlay import union_many

Bbox = tuple[float, float, float, float]


def expand_bbox(bbox: Bbox, fraction: float) -> Bbox:
    """Pad each side by fraction x that axis's span; degenerate spans borrow
    the other axis (or 1.0) so the clip window stays two-dimensional."""
    x0, y0, x1, y1 = bbox
    sx = x1 - x0
    sy = y1 - y0
    px = fraction * (sx if sx > 0 else (sy if sy > 0 else 1.0))
    py = fraction * (sy if sy > 0 else (sx if sx > 0 else 1.0))
    return (x0 - px, y0 - py, x1 + px, y1 + py)


def _dedup_seeds(seeds: list[Coord], eps: float) -> list[tuple[Coord, int]]:
    from .overlay import _NodeIndex

    index = _NodeIndex(eps)
    kept: list[tuple[Coord, int]] = []
    for idx, (x, y) in enumerate(seeds):
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidGeometry(f"non-finite seed ({x}, {y})")
        nid = index.add(x, y)
        if nid == len(kept):  # a new node: first seed at this location
            kept.append(((x, y), idx))
    return kept


class _SeedGrid:
    """Uniform bucket grid over the seed set for nearest-first traversal."""

    def __init__(self, coords: list[Coord], extent: Bbox):
        x0, y0, x1, y1 = extent
        span = max(x1 - x0, y1 - y0, 1e-300)
        self.cell = span / max(1.0, math.sqrt(len(coords)))
        self.ox, self.oy = x0, y0
        self.buckets: dict[tuple[int, int], list[int]] = {}
        for i, (x, y) in enumerate(coords):
            self.buckets.setdefault(self.key(x, y), []).append(i)

    def key(self, x: float, y: float) -> tuple[int, int]:
        return (int((x - self.ox) / self.cell), int((y - self.oy) / self.cell))

    def ring(self, gx: int, gy: int, r: int):
        if r == 0:
            yield (gx, gy)
            return
        for dx in range(-r, r + 1):
            yield (gx + dx, gy - r)
            yield (gx + dx, gy + r)
        for dy in range(-r + 1, r):
            yield (gx - r, gy + dy)
            yield (gx + r, gy + dy)


def _cell_ring(i: int, coords: list[Coord], grid: _SeedGrid, extent: Bbox) -> list[Coord]:
    """Half-plane cell of seed i, visiting neighbors in expanding bucket rings.

    Clipping by bisector half-planes is order-independent, so approximate
    nearest-first order is a pure optimization: a bisector to a seed farther
    than twice the farthest cell vertex never cuts the cell, and once a whole
    bucket ring is beyond that bound no later ring can matter.
    """
    x0, y0, x1, y1 = extent
    ring = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]  # CCW, open
    sx, sy = coords[i]
    max_r2 = max((vx - sx) ** 2 + (vy - sy) ** 2 for vx, vy in ring)
    gx, gy = grid.key(sx, sy)
    clip = kernels.clip_ring_halfplane
    r = 0
    while True:
        if r > 0:
            ring_min = (r - 1) * grid.cell
            if ring_min * ring_min > 4.0 * max_r2:
                break
        hit_bucket = False
        for bkey in grid.ring(gx, gy, r):
            bucket = grid.buckets.get(bkey)
            if not bucket:
                continue
            hit_bucket = True
            for j in bucket:
                if j == i:
                    continue
                ox, oy = coords[j]
                d2 = (ox - sx) ** 2 + (oy - sy) ** 2
                if d2 > 4.0 * max_r2:
                    continue
                a = 2.0 * (ox - sx)
                b = 2.0 * (oy - sy)
                c = ox * ox + oy * oy - sx * sx - sy * sy
                new_ring = clip(ring, a, b, c)
                if new_ring is ring:
                    continue
                if len(new_ring) < 3:
                    return []
                ring = new_ring
                max_r2 = max((vx - sx) ** 2 + (vy - sy) ** 2 for vx, vy in ring)
        r += 1
        if not hit_bucket and (r - 1) * grid.cell > 2.0 * math.sqrt(max_r2) + grid.cell:
            break
    return ring


def voronoi_points(
    seeds: list[Coord], extent: Bbox, cfg: GeometryConfig = DEFAULT_CONFIG
) -> list[tuple[Polygon, int]]:
    """One clipped cell per distinct seed, labeled with the seed's input index."""
    if len(seeds) < 2:
        raise TooFewSeeds(f"need at least 2 seeds, got {len(seeds)}")
    eps = cfg.snap_epsilon
    distinct = _dedup_seeds(seeds, eps)
    if len(distinct) < 2:
        raise DuplicateSeedsOnly("all seeds coincide within snap tolerance")
    x0, y0, x1, y1 = extent
    for (sx, sy), _ in distinct:
        if not (x0 - eps <= sx <= x1 + eps and y0 - eps <= sy <= y1 + eps):
            raise InvalidGeometry(f"seed ({sx}, {sy}) outside extent {extent}")
    clip_extent = expand_bbox(extent, cfg.voronoi_extent_expansion)
    coords = [c for c, _ in distinct]
    grid = _SeedGrid(coords, clip_extent)
    cells = []
    for i, (_, src_idx) in enumerate(distinct):
        ring = _cell_ring(i, coords, grid, clip_extent)
        if len(ring) >= 3 and kernels.signed_area(ring) != 0.0:
            closed = tuple(ring) + (ring[0],)
            cells.append((Polygon((ensure_ring_winding(closed, clockwise=True),)), src_idx))
    return cells


def densify_geometry(g: Geometry, interval: float) -> list[Coord]:
    """Vertices plus evenly spaced samples along each segment."""
    if isinstance(g, Point):
        return [g.coord]
    if isinstance(g, MultiPoint):
        return list(g.coords)
    if isinstance(g, NullShape):
        return []
    parts = g.parts if hasattr(g, "parts") else g.rings
    out: list[Coord] = []
    for part in parts:
        for (ax, ay), (bx, by) in zip(part, part[1:]):
            seg_len = math.hypot(bx - ax, by - ay)
            steps = max(1, int(math.ceil(seg_len / interval)))
            for s in range(steps):
                out.append((ax + (bx - ax) * s / steps, ay + (by - ay) * s / steps))
        out.append(part[-1])
    return out


def voronoi_features(
    d: Dataset, extent: Bbox | None = None, cfg: GeometryConfig = DEFAULT_CONFIG
) -> list[tuple[Polygon, int]]:
    """Nearest-feature regions: densified sample cells unioned per feature."""
    feats = [f for f in d.features if not isinstance(f.geometry, NullShape)]
    if len(feats) < 2:
        raise TooFewSeeds(f"need at least 2 features, got {len(feats)}")
    if extent is None:
        extent = d.bbox
    if cfg.densify_interval is not None:
        interval = cfg.densify_interval
    else:
        x0, y0, x1, y1 = extent
        diag = math.hypot(x1 - x0, y1 - y0)
        interval = diag / 1000.0 if diag > 0 else 1.0

    samples: list[Coord] = []
    labels: list[int] = []
    for fi, feat in enumerate(feats):
        for c in densify_geometry(feat.geometry, interval):
            samples.append(c)
            labels.append(fi)
    cells = voronoi_points(samples, extent, cfg)
    by_feature: dict[int, list] = {}
    for poly, sample_idx in cells:
        by_feature.setdefault(labels[sample_idx], []).append(poly.rings)
    out = []
    for fi in sorted(by_feature):
        merged = union_many(by_feature[fi], cfg.snap_epsilon)
        out.append((merged, fi))
    return out
