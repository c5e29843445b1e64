"""Planar computational geometry over the vector data model."""

from .config import DEFAULT_CONFIG, DispersionStats, GeometryConfig
from .buffers import buffer, inward_buffer, multi_ring_buffer
from .dataset_ops import clip_dataset
from .kernels import BACKEND
from .measures import (
    BoundingRect,
    convex_hull,
    dispersion_stats,
    lines_to_polygons,
    min_bounding_rect,
    nearest_connector,
    points_to_line,
    polygon_area,
    polygons_to_lines,
    polyline_length,
    reproject,
    vertices_to_points,
)
from .overlay import boolean_op, polygonize_split, ring_self_intersects, union_many
from .predicates import geom_contains, geom_within, geoms_intersect, point_in_polygon
from .voronoi import densify_geometry, expand_bbox, voronoi_features, voronoi_points

__all__ = [
    "BACKEND",
    "BoundingRect",
    "DEFAULT_CONFIG",
    "DispersionStats",
    "GeometryConfig",
    "boolean_op",
    "buffer",
    "clip_dataset",
    "convex_hull",
    "densify_geometry",
    "dispersion_stats",
    "expand_bbox",
    "geom_contains",
    "geom_within",
    "geoms_intersect",
    "inward_buffer",
    "lines_to_polygons",
    "min_bounding_rect",
    "multi_ring_buffer",
    "nearest_connector",
    "point_in_polygon",
    "points_to_line",
    "polygon_area",
    "polygonize_split",
    "polygons_to_lines",
    "polyline_length",
    "reproject",
    "ring_self_intersects",
    "union_many",
    "vertices_to_points",
    "voronoi_features",
    "voronoi_points",
]


def split_polygon_by_lines(poly, blades, cfg=DEFAULT_CONFIG):
    """Faces of the polygon after cutting along blade polylines."""
    from ..model import PolyLine
    segments = []
    for blade in blades:
        if isinstance(blade, PolyLine):
            for part in blade.parts:
                for a, b in zip(part, part[1:]):
                    segments.append((a[0], a[1], b[0], b[1]))
        else:
            raise TypeError("blades must be polylines")
    return polygonize_split(poly, segments, cfg.snap_epsilon)


__all__.append("split_polygon_by_lines")
