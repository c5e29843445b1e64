"""Registry coherence, validation verdicts, and tool invocation behavior."""

import json

import pytest
import yaml

from shapegpt.errors import SchemaMismatch, WrongToolCount, MissingFile
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
)
from shapegpt.tools import (
    ToolCall,
    Workspace,
    build_registry,
    default_registry,
    export_schemas,
    invoke,
    load_registry,
    validate_call,
    wire_declarations,
)

NAME = FieldDescriptor("NAME", FieldKind.CHARACTER, 10)
POP = FieldDescriptor("POP", FieldKind.NUMERIC, 10, 0)


@pytest.fixture(scope="module")
def registry():
    return default_registry()


@pytest.fixture()
def ws(tmp_path):
    return Workspace(tmp_path / "sandbox")


def point_layer():
    return Dataset.build(
        ShapeKind.POINT,
        [
            Feature(Point(0, 0), {"NAME": "a", "POP": 100}),
            Feature(Point(10, 0), {"NAME": "b", "POP": 2500}),
            Feature(Point(0, 10), {"NAME": "c", "POP": 33}),
        ],
        [NAME, POP],
    )


class TestRegistry:
    def test_counts(self, registry):
        assert len(registry) == 27
        assert len(registry.by_category("Data Reading")) == 2
        assert len(registry.by_category("Processing and Analyzing Data")) == 22
        assert len(registry.by_category("Saving Data")) == 3

    def test_shipped_docs_match_builtin(self, registry):
        assert registry == build_registry()

    def test_export_load_roundtrip(self, registry, tmp_path):
        (tmp_path / "t.yaml").write_text(export_schemas(registry, "yaml-style"))
        (tmp_path / "t.json").write_text(export_schemas(registry, "json-style"))
        assert load_registry(tmp_path) == registry

    def test_export_deterministic(self, registry):
        assert export_schemas(registry, "yaml-style") == export_schemas(registry, "yaml-style")
        names = [t["name"] for t in json.loads(export_schemas(registry, "json-style"))["tools"]]
        assert len(names) == 27

    def test_schema_mismatch_detected(self, registry, tmp_path):
        (tmp_path / "t.yaml").write_text(export_schemas(registry, "yaml-style"))
        doc = json.loads(export_schemas(registry, "json-style"))
        doc["tools"][0]["description"] = "tampered"
        (tmp_path / "t.json").write_text(json.dumps(doc))
        with pytest.raises(SchemaMismatch):
            load_registry(tmp_path)

    def test_missing_tool_detected(self, registry, tmp_path):
        (tmp_path / "t.yaml").write_text(export_schemas(registry, "yaml-style"))
        doc = json.loads(export_schemas(registry, "json-style"))
        doc["tools"] = doc["tools"][1:]
        (tmp_path / "t.json").write_text(json.dumps(doc))
        with pytest.raises(SchemaMismatch):
            load_registry(tmp_path)

    def test_wrong_count(self, registry, tmp_path):
        ydoc = yaml.safe_load(export_schemas(registry, "yaml-style"))
        ydoc["tools"] = ydoc["tools"][:5]
        (tmp_path / "t.yaml").write_text(yaml.safe_dump(ydoc))
        (tmp_path / "t.json").write_text(json.dumps(ydoc))
        with pytest.raises(WrongToolCount):
            load_registry(tmp_path)

    def test_empty_dir(self, tmp_path):
        with pytest.raises(MissingFile):
            load_registry(tmp_path)

    def test_duplicate_tool_rejected(self, registry, tmp_path):
        from shapegpt.errors import DuplicateTool

        ydoc = yaml.safe_load(export_schemas(registry, "yaml-style"))
        ydoc["tools"].append(ydoc["tools"][0])
        (tmp_path / "t.yaml").write_text(yaml.safe_dump(ydoc))
        (tmp_path / "t.json").write_text(json.dumps(ydoc))
        with pytest.raises(DuplicateTool):
            load_registry(tmp_path)

    def test_wire_declarations(self, registry):
        decls = wire_declarations(registry)
        assert len(decls) == 27
        buf = next(d for d in decls if d["name"] == "buffer")
        assert buf["parameters"]["type"] == "object"
        assert "distance" in buf["parameters"]["properties"]
        assert "distance" in buf["parameters"]["required"]
        assert buf["parameters"]["properties"]["distance"]["type"] == "number"


class TestValidateCall:
    def test_missing_param(self, registry):
        v = validate_call(ToolCall("buffer", {"layer": "roads"}), registry)
        assert str(v) == "missing_param(distance)"

    def test_type_mismatch(self, registry):
        v = validate_call(
            ToolCall("buffer", {"layer": "roads", "distance": "five"}), registry
        )
        assert v.kind == "type_mismatch" and v.param == "distance"

    def test_valid(self, registry):
        v = validate_call(ToolCall("buffer", {"layer": "roads", "distance": 500}), registry)
        assert v.is_valid

    def test_unknown_tool(self, registry):
        assert validate_call(ToolCall("explode", {}), registry).kind == "unknown_tool"

    def test_unknown_param(self, registry):
        v = validate_call(
            ToolCall("buffer", {"layer": "r", "distance": 1, "bogus": 2}), registry
        )
        assert v.kind == "unknown_param" and v.param == "bogus"

    def test_enum_value(self, registry):
        v = validate_call(
            ToolCall(
                "spatial_join",
                {"target_layer": "a", "join_layer": "b", "predicate": "touches"},
            ),
            registry,
        )
        assert v.kind == "type_mismatch" and v.param == "predicate"


class TestInvoke:
    def test_read_and_describe(self, registry, ws, tmp_path):
        write_dataset(point_layer(), ws.resolve("input/pts.shp", for_write=True))
        res = invoke(ToolCall("read_shapefile", {"path": "input/pts.shp", "alias": "pts"}), ws, registry)
        assert res.ok and res.output_handle == "pts"
        assert "3 feature(s)" in res.message
        res2 = invoke(ToolCall("describe_shapefile", {"layer": "pts"}), ws, registry)
        assert res2.ok and "Point" in res2.message

    def test_unknown_layer_is_error_result(self, registry, ws):
        res = invoke(ToolCall("clip", {"layer": "ghost", "boundary_layer": "ghost2"}), ws, registry)
        assert not res.ok
        assert res.error_kind == "UnknownLayer"

    def test_buffer_then_clip_pipeline(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(ToolCall("buffer", {"layer": "pts", "distance": 2.0, "output": "buf"}), ws, registry)
        assert res.ok
        assert ws.layer("buf").shape_kind is ShapeKind.POLYGON
        assert len(ws.layer("buf").features) == 3

    def test_filter_features(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(
            ToolCall(
                "filter_features",
                {"layer": "pts", "field": "POP", "comparator": ">", "value": "100", "output": "big"},
            ),
            ws,
            registry,
        )
        assert res.ok
        assert [f.attributes["NAME"] for f in ws.layer("big").features] == ["b"]

    def test_rename_add_field(self, registry, ws):
        ws.put("pts", point_layer())
        assert invoke(
            ToolCall("rename_field", {"layer": "pts", "old_name": "POP", "new_name": "POP2020", "output": "r"}),
            ws, registry,
        ).ok
        assert any(f.name == "POP2020" for f in ws.layer("r").fields)
        res = invoke(
            ToolCall("add_field", {"layer": "r", "name": "RISK", "kind": "Numeric",
                                   "length": 8, "decimals": 2, "default_value": "1.5", "output": "r2"}),
            ws, registry,
        )
        assert res.ok
        assert ws.layer("r2").features[0].attributes["RISK"] == 1.5

    def test_add_xy_fields(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(ToolCall("add_xy_fields", {"layer": "pts", "output": "xy"}), ws, registry)
        assert res.ok
        assert ws.layer("xy").features[1].attributes["X"] == 10.0

    def test_save_roundtrip_and_artifacts(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(ToolCall("save_shapefile", {"layer": "pts", "path": "output/pts.shp"}), ws, registry)
        assert res.ok
        assert "output/pts.shp" in ws.artifacts
        back = read_dataset(ws.resolve("output/pts.shp"))
        assert len(back.features) == 3

    def test_sandbox_escape_rejected(self, registry, ws):
        res = invoke(ToolCall("save_shapefile", {"layer": "x", "path": "../escape.shp"}), ws, registry)
        assert not res.ok and res.error_kind in ("SandboxViolation", "UnknownLayer")
        ws.put("pts", point_layer())
        res2 = invoke(ToolCall("save_shapefile", {"layer": "pts", "path": "../escape.shp"}), ws, registry)
        assert not res2.ok and res2.error_kind == "SandboxViolation"
        assert not (ws.sandbox_dir.parent / "escape.shp").exists()

    def test_save_csv(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(ToolCall("save_table_csv", {"layer": "pts", "path": "output/t.csv"}), ws, registry)
        assert res.ok
        text = ws.resolve("output/t.csv").read_text()
        assert text.splitlines()[0] == "NAME,POP"
        assert len(text.splitlines()) == 4

    def test_render_map(self, registry, ws):
        from shapegpt.tools.render import read_png_size

        ws.put("pts", point_layer())
        res = invoke(ToolCall("render_map_image", {"layers": ["pts"], "path": "output/map.png"}), ws, registry)
        assert res.ok
        assert read_png_size(ws.resolve("output/map.png")) == (1024, 1024)

    def test_render_empty_layer(self, registry, ws):
        from shapegpt.tools.render import read_png_size

        ws.put("void", Dataset.build(ShapeKind.POINT, [], [NAME]))
        res = invoke(ToolCall("render_map_image", {"layers": ["void"], "path": "output/e.png"}), ws, registry)
        assert res.ok
        assert read_png_size(ws.resolve("output/e.png")) == (1024, 1024)

    def test_overlay_intersection_merges_attrs(self, registry, ws):
        def sq(x0, y0, s, name):
            ring = ((x0, y0), (x0, y0 + s), (x0 + s, y0 + s), (x0 + s, y0), (x0, y0))
            return Feature(Polygon((ring,)), {"NAME": name})

        ws.put("a", Dataset.build(ShapeKind.POLYGON, [sq(0, 0, 2, "left")], [NAME]))
        ws.put("b", Dataset.build(ShapeKind.POLYGON, [sq(1, 0, 2, "right")], [NAME]))
        res = invoke(ToolCall("overlay_intersection", {"layer_a": "a", "layer_b": "b", "output": "o"}), ws, registry)
        assert res.ok
        out = ws.layer("o")
        assert len(out.features) == 1
        assert set(f.name for f in out.fields) == {"NAME", "NAME_2"}
        assert out.features[0].attributes["NAME"] == "left"
        assert out.features[0].attributes["NAME_2"] == "right"

    def test_spatial_join_within(self, registry, ws):
        ring = ((0, 0), (0, 5), (5, 5), (5, 0), (0, 0))
        zone = Dataset.build(
            ShapeKind.POLYGON, [Feature(Polygon((ring,)), {"NAME": "zone1", "POP": 1})], [NAME, POP]
        )
        ws.put("pts", point_layer())
        ws.put("zones", zone)
        res = invoke(
            ToolCall("spatial_join", {"target_layer": "pts", "join_layer": "zones",
                                      "predicate": "within", "output": "j"}),
            ws, registry,
        )
        assert res.ok
        j = ws.layer("j")
        a = next(f for f in j.features if f.attributes["NAME"] == "a")
        b = next(f for f in j.features if f.attributes["NAME"] == "b")
        assert a.attributes["NAME_2"] == "zone1"
        assert b.attributes["NAME_2"] is None

    def test_points_to_line_groups(self, registry, ws):
        seq = FieldDescriptor("SEQ", FieldKind.NUMERIC, 4, 0)
        trip = FieldDescriptor("TRIP", FieldKind.CHARACTER, 4)
        feats = [
            Feature(Point(0, 0), {"TRIP": "t1", "SEQ": 2}),
            Feature(Point(1, 1), {"TRIP": "t1", "SEQ": 1}),
            Feature(Point(5, 5), {"TRIP": "t2", "SEQ": 1}),
            Feature(Point(6, 5), {"TRIP": "t2", "SEQ": 2}),
        ]
        ws.put("gps", Dataset.build(ShapeKind.POINT, feats, [trip, seq]))
        res = invoke(
            ToolCall("points_to_line", {"layer": "gps", "group_field": "TRIP",
                                        "order_field": "SEQ", "output": "lines"}),
            ws, registry,
        )
        assert res.ok
        lines = ws.layer("lines")
        assert len(lines.features) == 2
        t1 = next(f for f in lines.features if f.attributes["TRIP"] == "t1")
        assert t1.geometry.parts[0] == ((1.0, 1.0), (0.0, 0.0))

    def test_multi_ring_buffer_fields(self, registry, ws):
        ws.put("pt", Dataset.build(ShapeKind.POINT, [Feature(Point(0, 0), {"NAME": "c"})], [NAME]))
        res = invoke(
            ToolCall("multi_ring_buffer", {"layer": "pt", "distances": [1.0, 2.0], "output": "rings"}),
            ws, registry,
        )
        assert res.ok
        rings = ws.layer("rings")
        assert [f.attributes["RING_DIST"] for f in rings.features] == [1.0, 2.0]

    def test_cluster_dispersion(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(ToolCall("cluster_dispersion", {"layer": "pts", "output": "stats"}), ws, registry)
        assert res.ok and "mean center" in res.message
        stats = ws.layer("stats")
        assert stats.features[0].attributes["N_POINTS"] == 3

    def test_reproject_layer(self, registry, ws):
        d = Dataset.build(ShapeKind.POINT, [Feature(Point(180.0, 0.0), {"NAME": "am", "POP": 0})], [NAME, POP])
        ws.put("deg", d)
        res = invoke(
            ToolCall("reproject_layer", {"layer": "deg", "from_crs": "EPSG:4326",
                                         "to_crs": "EPSG:3857", "output": "m"}),
            ws, registry,
        )
        assert res.ok
        assert ws.layer("m").features[0].geometry.x == pytest.approx(20037508.342789244)

    def test_vertices_and_lines_conversions(self, registry, ws):
        ring = ((0, 0), (0, 1), (1, 1), (1, 0), (0, 0))
        ws.put("poly", Dataset.build(ShapeKind.POLYGON, [Feature(Polygon((ring,)), {"NAME": "sq"})], [NAME]))
        res = invoke(ToolCall("vertices_to_points", {"layer": "poly", "output": "verts"}), ws, registry)
        assert res.ok and len(ws.layer("verts").features) == 4
        res2 = invoke(ToolCall("polygons_to_lines", {"layer": "poly", "output": "edges"}), ws, registry)
        assert res2.ok and ws.layer("edges").shape_kind is ShapeKind.POLYLINE
        res3 = invoke(ToolCall("lines_to_polygons", {"layer": "edges", "output": "back"}), ws, registry)
        assert res3.ok and ws.layer("back").shape_kind is ShapeKind.POLYGON

    def test_minimum_bounding_rectangle_groups(self, registry, ws):
        feats = [
            Feature(Point(0, 0), {"NAME": "g1", "POP": 0}),
            Feature(Point(2, 0), {"NAME": "g1", "POP": 0}),
            Feature(Point(2, 1), {"NAME": "g1", "POP": 0}),
            Feature(Point(9, 9), {"NAME": "g2", "POP": 0}),
            Feature(Point(9, 9.5), {"NAME": "g2", "POP": 0}),
        ]
        ws.put("pts", Dataset.build(ShapeKind.POINT, feats, [NAME, POP]))
        res = invoke(
            ToolCall("minimum_bounding_rectangle",
                     {"layer": "pts", "group_field": "NAME", "output": "mbr"}),
            ws, registry,
        )
        assert res.ok
        mbr = ws.layer("mbr")
        assert len(mbr.features) == 2
        g2 = next(f for f in mbr.features if f.attributes["NAME"] == "g2")
        assert g2.attributes["DEGENERATE"] is True

    def test_split_polygons_tool(self, registry, ws):
        ring = ((0, 0), (0, 1), (1, 1), (1, 0), (0, 0))
        ws.put("poly", Dataset.build(ShapeKind.POLYGON, [Feature(Polygon((ring,)), {"NAME": "sq"})], [NAME]))
        blade = PolyLine((((0.5, -1), (0.5, 2)),))
        ws.put("blades", Dataset.build(ShapeKind.POLYLINE, [Feature(blade, {"NAME": "b"})], [NAME]))
        res = invoke(
            ToolCall("split_polygons_by_lines",
                     {"polygon_layer": "poly", "line_layer": "blades", "output": "split"}),
            ws, registry,
        )
        assert res.ok and len(ws.layer("split").features) == 2

    def test_nearest_connector_tool(self, registry, ws):
        a = PolyLine((((0, 0), (1, 0)),))
        b = PolyLine((((0, 3), (1, 3)),))
        ws.put("a", Dataset.build(ShapeKind.POLYLINE, [Feature(a, {"NAME": "a"})], [NAME]))
        ws.put("b", Dataset.build(ShapeKind.POLYLINE, [Feature(b, {"NAME": "b"})], [NAME]))
        res = invoke(ToolCall("nearest_connector_lines", {"layer_a": "a", "layer_b": "b", "output": "c"}), ws, registry)
        assert res.ok
        conn = ws.layer("c").features[0]
        assert conn.attributes["DIST"] == 3.0

    def test_voronoi_tools(self, registry, ws):
        ws.put("pts", point_layer())
        res = invoke(ToolCall("voronoi_points", {"layer": "pts", "output": "cells"}), ws, registry)
        assert res.ok and len(ws.layer("cells").features) == 3
        res2 = invoke(ToolCall("voronoi_features", {"layer": "pts", "output": "regions"}), ws, registry)
        assert res2.ok and len(ws.layer("regions").features) == 3

    def test_inward_buffer_tool(self, registry, ws):
        ring = ((0, 0), (0, 10), (10, 10), (10, 0), (0, 0))
        ws.put("poly", Dataset.build(ShapeKind.POLYGON, [Feature(Polygon((ring,)), {"NAME": "sq"})], [NAME]))
        res = invoke(ToolCall("inward_buffer", {"layer": "poly", "distance": 1.0, "output": "band"}), ws, registry)
        assert res.ok
        from shapegpt.geom import polygon_area

        assert polygon_area(ws.layer("band").features[0].geometry) == pytest.approx(
            100 - 64, rel=0.01
        )

    def test_calculate_length_tool(self, registry, ws):
        line = PolyLine((((0, 0), (3, 4)),))
        ws.put("lines", Dataset.build(ShapeKind.POLYLINE, [Feature(line, {"NAME": "l"})], [NAME]))
        res = invoke(ToolCall("calculate_length", {"layer": "lines", "output": "len"}), ws, registry)
        assert res.ok
        assert ws.layer("len").features[0].attributes["LENGTH"] == 5.0

    def test_clip_tool(self, registry, ws):
        ring = ((0, 0), (0, 5), (5, 5), (5, 0), (0, 0))
        ws.put("pts", point_layer())
        ws.put("bound", Dataset.build(ShapeKind.POLYGON, [Feature(Polygon((ring,)), {"NAME": "b"})], [NAME]))
        res = invoke(ToolCall("clip", {"layer": "pts", "boundary_layer": "bound", "output": "in"}), ws, registry)
        assert res.ok
        assert [f.attributes["NAME"] for f in ws.layer("in").features] == ["a"]

    def test_no_files_outside_sandbox(self, registry, ws, tmp_path):
        before = set(p for p in tmp_path.rglob("*"))
        ws.put("pts", point_layer())
        invoke(ToolCall("save_shapefile", {"layer": "pts", "path": "out/x.shp"}), ws, registry)
        after = set(p for p in tmp_path.rglob("*"))
        for p in after - before:
            assert ws.sandbox_dir in p.parents or p == ws.sandbox_dir
