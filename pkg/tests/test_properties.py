"""Property tests for the contract invariants (hypothesis-driven)."""

import datetime
import math

import pytest
from hypothesis import given, settings, strategies as st

from shapegpt.dbf import format_value, parse_value, roundtrip_value
from shapegpt.geom import (
    boolean_op,
    buffer,
    min_bounding_rect,
    point_in_polygon,
    polygon_area,
    reproject,
)
from shapegpt.io import read_dataset, write_dataset
from shapegpt.model import (
    Dataset,
    Feature,
    FieldDescriptor,
    FieldKind,
    Point,
    PolyLine,
    Polygon,
    ShapeKind,
    compute_bbox,
)
from shapegpt.agents import count_repeated_calls
from shapegpt.tools import ToolCall, default_registry, validate_call

finite_coord = st.tuples(
    st.floats(-1e4, 1e4, allow_nan=False, allow_infinity=False),
    st.floats(-1e4, 1e4, allow_nan=False, allow_infinity=False),
)


@st.composite
def star_polygons(draw, rmax=3.0):
    n = draw(st.integers(4, 10))
    cx = draw(st.floats(-2, 2))
    cy = draw(st.floats(-2, 2))
    ring = []
    for i in range(n):
        angle = 2 * math.pi * (i + draw(st.floats(0.0, 0.9))) / n
        r = draw(st.floats(0.3, 1.0)) * rmax
        ring.append((cx + r * math.cos(angle), cy + r * math.sin(angle)))
    ring.append(ring[0])
    ring.reverse()
    return Polygon((tuple(ring),))


class TestOverlayProperties:
    @settings(max_examples=40, deadline=None)
    @given(star_polygons(), star_polygons())
    def test_area_conservation(self, a, b):
        inter = polygon_area(boolean_op("intersection", a, b, 1e-9))
        diff = polygon_area(boolean_op("difference", a, b, 1e-9))
        total = polygon_area(a)
        assert abs(inter + diff - total) <= 1e-9 * max(total, 1.0)

    @settings(max_examples=25, deadline=None)
    @given(star_polygons(), star_polygons())
    def test_intersection_symmetry(self, a, b):
        ab = polygon_area(boolean_op("intersection", a, b, 1e-9))
        ba = polygon_area(boolean_op("intersection", b, a, 1e-9))
        assert abs(ab - ba) <= 1e-12

    @settings(max_examples=25, deadline=None)
    @given(star_polygons())
    def test_self_union_idempotent(self, a):
        area = polygon_area(a)
        union = polygon_area(boolean_op("union", a, a, 1e-9))
        assert abs(union - area) <= 1e-12 * max(area, 1.0)

    @settings(max_examples=25, deadline=None)
    @given(star_polygons(), star_polygons())
    def test_intersection_bounded_by_inputs(self, a, b):
        inter = polygon_area(boolean_op("intersection", a, b, 1e-9))
        assert inter <= min(polygon_area(a), polygon_area(b)) + 1e-9


class TestBufferProperties:
    @settings(max_examples=15, deadline=None)
    @given(
        st.lists(finite_coord, min_size=2, max_size=4, unique=True),
        st.floats(0.1, 2.0),
        st.floats(1.2, 3.0),
    )
    def test_monotone_in_distance(self, coords, d1, factor):
        line = PolyLine((tuple(coords),))
        d2 = d1 * factor
        a1 = polygon_area(buffer(line, d1))
        a2 = polygon_area(buffer(line, d2))
        assert a1 < a2


class TestMbrProperties:
    @settings(max_examples=40, deadline=None)
    @given(st.lists(finite_coord, min_size=1, max_size=40))
    def test_containment_and_mode_ordering(self, pts):
        ma = min_bounding_rect(pts, "min_area")
        aa = min_bounding_rect(pts, "axis_aligned")
        assert ma.area <= aa.area + 1e-9 * max(aa.area, 1.0)
        for x, y in pts:
            assert point_in_polygon(x, y, ma.polygon, 1e-6 * max(1.0, abs(x), abs(y)))


class TestReprojectProperties:
    @settings(max_examples=100, deadline=None)
    @given(st.floats(-179.9, 179.9), st.floats(-84.9, 84.9))
    def test_roundtrip_identity(self, lon, lat):
        x, y = reproject((lon, lat), "EPSG:4326", "EPSG:3857")
        lon2, lat2 = reproject((x, y), "EPSG:3857", "EPSG:4326")
        assert abs(lon2 - lon) < 1e-9
        assert abs(lat2 - lat) < 1e-9


FIELDS = [
    FieldDescriptor("TXT", FieldKind.CHARACTER, 16),
    FieldDescriptor("INTV", FieldKind.NUMERIC, 9, 0),
    FieldDescriptor("REALV", FieldKind.NUMERIC, 12, 3),
    FieldDescriptor("FLAG", FieldKind.LOGICAL, 1),
    FieldDescriptor("DAY", FieldKind.DATE, 8),
]


def field_value(fd: FieldDescriptor):
    if fd.kind is FieldKind.CHARACTER:
        return st.text(
            alphabet=st.characters(min_codepoint=32, max_codepoint=126), max_size=fd.length
        ).map(lambda s: s.rstrip())
    if fd.kind is FieldKind.NUMERIC and fd.decimal_count == 0:
        return st.integers(-99999999, 999999999)
    if fd.kind is FieldKind.NUMERIC:
        return st.floats(-9999, 99999).map(lambda v: round(v, 3))
    if fd.kind is FieldKind.LOGICAL:
        return st.booleans()
    return st.dates(datetime.date(1, 1, 1), datetime.date(9999, 12, 31))


class TestDbfFormatProperties:
    @settings(max_examples=200)
    @given(st.data())
    def test_format_parse_roundtrip(self, data):
        fd = data.draw(st.sampled_from(FIELDS))
        value = data.draw(field_value(fd))
        raw = format_value(fd, value)
        assert len(raw) == fd.length
        back = parse_value(fd, raw)
        assert back == roundtrip_value(fd, value)
        # a second trip is the identity: formatting is idempotent
        assert parse_value(fd, format_value(fd, back)) == back


@st.composite
def datasets(draw):
    kind = draw(st.sampled_from([ShapeKind.POINT, ShapeKind.POLYLINE]))
    fields = draw(st.lists(st.sampled_from(FIELDS), min_size=1, max_size=3, unique_by=lambda f: f.name))
    feats = []
    for _ in range(draw(st.integers(0, 6))):
        if kind is ShapeKind.POINT:
            x, y = draw(finite_coord)
            g = Point(x, y)
        else:
            coords = draw(st.lists(finite_coord, min_size=2, max_size=5))
            g = PolyLine((tuple(coords),))
        feats.append(Feature(g, {fd.name: draw(field_value(fd)) for fd in fields}))
    return Dataset.build(kind, feats, fields, bbox=(0, 0, 0, 0))


class TestRoundTripProperty:
    @settings(max_examples=30, deadline=None)
    @given(d=datasets())
    def test_write_read_identity(self, tmp_path_factory, d):
        target = tmp_path_factory.mktemp("rt") / "d.shp"
        write_dataset(d, target)
        back = read_dataset(target)
        assert back.shape_kind is d.shape_kind
        assert len(back.features) == len(d.features)
        for orig, got in zip(d.features, back.features):
            assert got.geometry == orig.geometry
            for fd in d.fields:
                assert got.attributes[fd.name] == roundtrip_value(fd, orig.attributes[fd.name])
        if d.features:
            assert back.bbox == compute_bbox(f.geometry for f in d.features)


call_values = st.one_of(
    st.text(max_size=6),
    st.integers(-5, 5),
    st.floats(-5, 5, allow_nan=False),
    st.booleans(),
    st.lists(st.integers(-3, 3), max_size=3),
)
calls = st.builds(
    ToolCall,
    st.sampled_from(["buffer", "clip", "save_shapefile", "bogus_tool"]),
    st.dictionaries(st.sampled_from(["layer", "distance", "path", "x"]), call_values, max_size=3),
)


REGISTRY = default_registry()


class TestValidationTotality:
    @settings(max_examples=200)
    @given(calls)
    def test_every_call_gets_exactly_one_verdict(self, call):
        registry = REGISTRY
        verdict = validate_call(call, registry)  # must never raise
        assert verdict.kind in (
            "valid", "unknown_tool", "missing_param", "type_mismatch", "unknown_param",
        )
        assert validate_call(call, registry) == verdict  # pure


class TestRepetitionProperties:
    @settings(max_examples=100)
    @given(st.lists(calls, max_size=12))
    def test_bounds_and_shift_invariance(self, call_list):
        n = count_repeated_calls(call_list)
        assert 0 <= n <= max(0, len(call_list) - 1)
        doubled = call_list + call_list
        if call_list:
            assert count_repeated_calls(doubled) >= len(call_list)
