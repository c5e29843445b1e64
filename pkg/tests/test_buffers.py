"""Buffer generation against closed-form area oracles."""

import math

import pytest

from shapegpt.errors import NonPositiveDistance, OpenBoundary, UnsortedDistances
from shapegpt.geom import (
    GeometryConfig,
    buffer,
    inward_buffer,
    multi_ring_buffer,
    polygon_area,
)
from shapegpt.model import MultiPoint, Point, PolyLine, Polygon

UNIT_SQUARE = Polygon((((0, 0), (0, 1), (1, 1), (1, 0), (0, 0)),))


def ngon_area(n, r):
    """Regular n-gon inscribed in a circle of radius r."""
    return (n / 2.0) * r * r * math.sin(2.0 * math.pi / n)


class TestBuffer:
    def test_point_disc_is_regular_polygon(self):
        got = buffer(Point(0, 0), 1.0, GeometryConfig(arc_segments_per_quadrant=8))
        assert polygon_area(got) == pytest.approx(ngon_area(32, 1.0), rel=1e-12)
        assert polygon_area(got) == pytest.approx(3.121445, abs=1e-6)

    def test_point_disc_convergence(self):
        for k, tol in ((8, 0.01), (32, 0.0005)):
            got = buffer(Point(2, 3), 1.0, GeometryConfig(arc_segments_per_quadrant=k))
            assert abs(polygon_area(got) - math.pi) / math.pi < tol

    def test_segment_capsule_area(self):
        r = 0.5
        seg = PolyLine((((0, 0), (1, 0)),))
        got = buffer(seg, r, GeometryConfig(arc_segments_per_quadrant=8))
        want = 2 * r * 1.0 + math.pi * r * r
        assert abs(polygon_area(got) - want) / want < 0.01

    def test_double_buffer_vs_single(self):
        seg = PolyLine((((0, 0), (2, 1)),))
        once = buffer(seg, 1.0)
        twice = buffer(once, 0.5)
        direct = buffer(seg, 1.5)
        assert abs(polygon_area(twice) - polygon_area(direct)) / polygon_area(direct) < 0.02

    def test_multipoint_union(self):
        got = buffer(MultiPoint(((0, 0), (10, 0))), 1.0)
        assert polygon_area(got) == pytest.approx(2 * ngon_area(32, 1.0), rel=1e-9)
        overlapping = buffer(MultiPoint(((0, 0), (0.1, 0))), 1.0)
        assert polygon_area(overlapping) < 2 * ngon_area(32, 1.0)

    def test_monotone_in_distance(self):
        seg = PolyLine((((0, 0), (3, 1), (4, -1)),))
        areas = [polygon_area(buffer(seg, d)) for d in (0.2, 0.5, 1.0, 2.0)]
        assert all(a < b for a, b in zip(areas, areas[1:]))

    def test_nonpositive_distance(self):
        with pytest.raises(NonPositiveDistance):
            buffer(Point(0, 0), 0.0)
        with pytest.raises(NonPositiveDistance):
            buffer(Point(0, 0), -1.0)

    def test_polygon_buffer_contains_original(self):
        got = buffer(UNIT_SQUARE, 0.25)
        # square grown by 0.25 on each side plus corner arcs
        want = 1.0 + 4 * 0.25 + ngon_area(32, 0.25)
        assert polygon_area(got) == pytest.approx(want, rel=0.01)


class TestInwardBuffer:
    def test_square_band(self):
        got = inward_buffer(UNIT_SQUARE, 0.1)
        assert polygon_area(got) == pytest.approx(1 - 0.8 * 0.8, rel=0.01)

    def test_band_swallows_square(self):
        got = inward_buffer(UNIT_SQUARE, 0.6)
        assert polygon_area(got) == pytest.approx(1.0, rel=1e-9)

    def test_closed_polyline_accepted(self):
        ring = PolyLine((((0, 0), (0, 1), (1, 1), (1, 0), (0, 0)),))
        got = inward_buffer(ring, 0.1)
        assert polygon_area(got) == pytest.approx(0.36, rel=0.01)

    def test_open_boundary_rejected(self):
        with pytest.raises(OpenBoundary):
            inward_buffer(PolyLine((((0, 0), (1, 0), (1, 1)),)), 0.1)

    def test_nonpositive(self):
        with pytest.raises(NonPositiveDistance):
            inward_buffer(UNIT_SQUARE, 0.0)


class TestMultiRing:
    def test_point_two_rings_area_ratio(self):
        rings = multi_ring_buffer(Point(0, 0), [1.0, 2.0])
        assert len(rings) == 2
        a0 = polygon_area(rings[0][0])
        a1 = polygon_area(rings[1][0])
        assert a1 / a0 == pytest.approx(3.0, rel=0.01)
        assert rings[0][1] == 1.0 and rings[1][1] == 2.0

    def test_single_distance_equals_buffer(self):
        rings = multi_ring_buffer(Point(0, 0), [1.5])
        assert len(rings) == 1
        assert polygon_area(rings[0][0]) == pytest.approx(
            polygon_area(buffer(Point(0, 0), 1.5)), rel=1e-12
        )

    def test_unsorted_rejected(self):
        with pytest.raises(UnsortedDistances):
            multi_ring_buffer(Point(0, 0), [2.0, 1.0])
        with pytest.raises(UnsortedDistances):
            multi_ring_buffer(Point(0, 0), [])
        with pytest.raises(NonPositiveDistance):
            multi_ring_buffer(Point(0, 0), [-1.0, 2.0])

    def test_rings_disjoint_and_tile(self):
        rings = multi_ring_buffer(Point(0, 0), [1.0, 2.0, 3.0])
        total = sum(polygon_area(p) for p, _ in rings)
        outer = polygon_area(buffer(Point(0, 0), 3.0))
        assert total == pytest.approx(outer, rel=1e-9)
