"""Tunable parameters for the geometry engine."""

from __future__ import annotations

from dataclasses import dataclass

from ..model import Coord


@dataclass(frozen=True)
class GeometryConfig:
    snap_epsilon: float = 1e-9          # absolute, CRS units
    arc_segments_per_quadrant: int = 8
    voronoi_extent_expansion: float = 0.10
    densify_interval: float | None = None  # None: bbox diagonal / 1000

    def __post_init__(self):
        if self.snap_epsilon <= 0:
            raise ValueError("snap_epsilon must be > 0")
        if self.arc_segments_per_quadrant < 2:
            raise ValueError("arc_segments_per_quadrant must be >= 2")
        if self.voronoi_extent_expansion < 0:
            raise ValueError("voronoi_extent_expansion must be >= 0")
        if self.densify_interval is not None and self.densify_interval <= 0:
            raise ValueError("densify_interval must be > 0")


DEFAULT_CONFIG = GeometryConfig()


@dataclass(frozen=True)
class DispersionStats:
    mean_center: Coord
    standard_distance: float
    orientation_deg: float  # major axis, counter-clockwise from +x, in [0, 180)
    sigma_major: float
    sigma_minor: float
