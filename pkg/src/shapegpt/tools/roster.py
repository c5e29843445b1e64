"""The built-in tool roster: 27 shapefile operations in three categories."""

from __future__ import annotations

from .schema import ParamSpec, Registry, ToolSpec

READ = "Data Reading"
PROC = "Processing and Analyzing Data"
SAVE = "Saving Data"


def _layer(desc="Handle of the input layer."):
    return ParamSpec("layer", "layer-handle", description=desc)


def _output(desc="Handle for the result layer; auto-generated when omitted."):
    return ParamSpec("output", "layer-handle", required=False, description=desc)


def build_registry() -> Registry:
    tools = [
        ToolSpec(
            "read_shapefile",
            READ,
            "Read a shapefile set (.shp/.dbf and friends) from the workspace into a named layer.",
            (
                ParamSpec("path", "file-path", description="Path to the .shp file, relative to the workspace."),
                ParamSpec("alias", "layer-handle", required=False, description="Layer handle to register; defaults to the file stem."),
            ),
            ('read_shapefile(path="input/roads.shp", alias="roads")',),
        ),
        ToolSpec(
            "describe_shapefile",
            READ,
            "Summarize a layer: geometry type, feature count, fields, bbox, CRS flag, and sample rows.",
            (_layer(),),
            ('describe_shapefile(layer="roads")',),
        ),
        ToolSpec(
            "rename_field",
            PROC,
            "Rename an attribute field, keeping its type and values.",
            (
                _layer(),
                ParamSpec("old_name", "text", description="Current field name."),
                ParamSpec("new_name", "text", description="New field name (max 10 bytes)."),
                _output(),
            ),
            ('rename_field(layer="parcels", old_name="NM", new_name="NAME", output="parcels2")',),
        ),
        ToolSpec(
            "add_field",
            PROC,
            "Add an attribute field with an optional constant default value.",
            (
                _layer(),
                ParamSpec("name", "text", description="New field name (max 10 bytes)."),
                ParamSpec("kind", "enum", values=("Character", "Numeric", "Float", "Logical", "Date"), description="Field type."),
                ParamSpec("length", "integer", required=False, default=16, description="Byte length (ignored for Logical/Date)."),
                ParamSpec("decimals", "integer", required=False, default=0, description="Decimal places for Numeric/Float."),
                ParamSpec("default_value", "text", required=False, description="Initial value for every row, parsed per the field type."),
                _output(),
            ),
            ('add_field(layer="sites", name="RISK", kind="Numeric", length=8, decimals=2)',),
        ),
        ToolSpec(
            "filter_features",
            PROC,
            "Keep features whose attribute satisfies a single comparison.",
            (
                _layer(),
                ParamSpec("field", "text", description="Attribute field to test."),
                ParamSpec("comparator", "enum", values=("=", "!=", "<", "<=", ">", ">=", "contains"), description="Comparison operator."),
                ParamSpec("value", "text", description="Literal to compare against, parsed per the field type."),
                _output(),
            ),
            ('filter_features(layer="cities", field="POP", comparator=">", value="100000", output="big")',),
        ),
        ToolSpec(
            "add_xy_fields",
            PROC,
            "Add X and Y coordinate fields to every point feature.",
            (
                _layer("Point layer to annotate."),
                ParamSpec("x_field", "text", required=False, default="X", description="Name of the X field."),
                ParamSpec("y_field", "text", required=False, default="Y", description="Name of the Y field."),
                _output(),
            ),
            ('add_xy_fields(layer="wells", output="wells_xy")',),
        ),
        ToolSpec(
            "calculate_length",
            PROC,
            "Write each line or polygon-boundary length into a numeric field.",
            (
                _layer("Line or polygon layer."),
                ParamSpec("field", "text", required=False, default="LENGTH", description="Field to store the length."),
                _output(),
            ),
            ('calculate_length(layer="roads", field="LEN_M", output="roads_len")',),
        ),
        ToolSpec(
            "reproject_layer",
            PROC,
            "Transform coordinates between WGS84 lon/lat and spherical web-mercator.",
            (
                _layer(),
                ParamSpec("from_crs", "enum", values=("EPSG:4326", "EPSG:3857"), description="Source CRS."),
                ParamSpec("to_crs", "enum", values=("EPSG:4326", "EPSG:3857"), description="Target CRS."),
                _output(),
            ),
            ('reproject_layer(layer="sites", from_crs="EPSG:4326", to_crs="EPSG:3857", output="sites_m")',),
        ),
        ToolSpec(
            "buffer",
            PROC,
            "Build polygons covering everything within a distance of each feature.",
            (
                _layer(),
                ParamSpec("distance", "real", description="Buffer distance in CRS units (> 0)."),
                _output(),
            ),
            ('buffer(layer="wells", distance=500, output="wells_buf")',),
        ),
        ToolSpec(
            "inward_buffer",
            PROC,
            "Band inside a closed boundary within a given depth of it.",
            (
                _layer("Closed-line or polygon layer."),
                ParamSpec("distance", "real", description="Band depth in CRS units (> 0)."),
                _output(),
            ),
            ('inward_buffer(layer="parcels", distance=10, output="setback")',),
        ),
        ToolSpec(
            "multi_ring_buffer",
            PROC,
            "Concentric buffer rings at ascending distances, one feature per source feature and ring.",
            (
                _layer(),
                ParamSpec("distances", "real-list", description="Strictly ascending distances (> 0)."),
                _output(),
            ),
            ('multi_ring_buffer(layer="epicenter", distances=[1000, 2000, 5000], output="impact")',),
        ),
        ToolSpec(
            "clip",
            PROC,
            "Keep the parts of each feature inside a polygon boundary layer; attributes are preserved.",
            (
                _layer("Layer to clip."),
                ParamSpec("boundary_layer", "layer-handle", description="Polygon layer forming the clip boundary."),
                _output(),
            ),
            ('clip(layer="roads", boundary_layer="district", output="roads_in")',),
        ),
        ToolSpec(
            "overlay_intersection",
            PROC,
            "Pairwise polygon intersections of two layers with both attribute sets merged.",
            (
                ParamSpec("layer_a", "layer-handle", description="First polygon layer."),
                ParamSpec("layer_b", "layer-handle", description="Second polygon layer (same handle allowed: overlaps within one layer)."),
                _output(),
            ),
            ('overlay_intersection(layer_a="zones", layer_b="floodplain", output="at_risk")',),
        ),
        ToolSpec(
            "spatial_join",
            PROC,
            "Attach attributes of the first matching join feature to each target feature.",
            (
                ParamSpec("target_layer", "layer-handle", description="Layer that keeps its geometry."),
                ParamSpec("join_layer", "layer-handle", description="Layer searched for matches."),
                ParamSpec("predicate", "enum", required=False, default="intersects", values=("intersects", "contains", "within"), description="Spatial relationship tested target-vs-join."),
                _output(),
            ),
            ('spatial_join(target_layer="buildings", join_layer="zones", predicate="within", output="joined")',),
        ),
        ToolSpec(
            "voronoi_points",
            PROC,
            "Thiessen cells of a point layer, clipped to the expanded layer extent.",
            (
                _layer("Point layer of cell seeds."),
                _output(),
            ),
            ('voronoi_points(layer="stations", output="cells")',),
        ),
        ToolSpec(
            "voronoi_features",
            PROC,
            "Nearest-feature regions for any geometry mix, by densified boundary sampling.",
            (
                _layer(),
                _output(),
            ),
            ('voronoi_features(layer="facilities", output="service_areas")',),
        ),
        ToolSpec(
            "minimum_bounding_rectangle",
            PROC,
            "Smallest enclosing rectangle per group of point features (rotated or axis-aligned).",
            (
                _layer("Point layer."),
                ParamSpec("mode", "enum", required=False, default="min_area", values=("min_area", "axis_aligned"), description="Rectangle fitting mode."),
                ParamSpec("group_field", "text", required=False, description="Group rows by this field; one rectangle per group."),
                _output(),
            ),
            ('minimum_bounding_rectangle(layer="sightings", group_field="SPECIES", output="ranges")',),
        ),
        ToolSpec(
            "vertices_to_points",
            PROC,
            "Emit every vertex of each line or polygon feature as a point feature.",
            (
                _layer("Line or polygon layer."),
                _output(),
            ),
            ('vertices_to_points(layer="routes", output="route_pts")',),
        ),
        ToolSpec(
            "lines_to_polygons",
            PROC,
            "Close line parts into polygon rings, keeping attributes.",
            (
                _layer("Line layer whose parts outline regions."),
                _output(),
            ),
            ('lines_to_polygons(layer="boundaries", output="regions")',),
        ),
        ToolSpec(
            "polygons_to_lines",
            PROC,
            "Convert polygon rings into line features, keeping attributes.",
            (
                _layer("Polygon layer."),
                _output(),
            ),
            ('polygons_to_lines(layer="parcels", output="parcel_edges")',),
        ),
        ToolSpec(
            "points_to_line",
            PROC,
            "Draw a two-point line from the first to the last point of each group.",
            (
                _layer("Point layer."),
                ParamSpec("group_field", "text", required=False, description="Group points by this field; one line per group."),
                ParamSpec("order_field", "text", required=False, description="Sort points within a group by this field."),
                _output(),
            ),
            ('points_to_line(layer="gps_fixes", group_field="TRIP", order_field="SEQ", output="trips")',),
        ),
        ToolSpec(
            "split_polygons_by_lines",
            PROC,
            "Cut polygons along line features and keep every resulting piece.",
            (
                ParamSpec("polygon_layer", "layer-handle", description="Polygons to split."),
                ParamSpec("line_layer", "layer-handle", description="Cutting lines."),
                _output(),
            ),
            ('split_polygons_by_lines(polygon_layer="field", line_layer="fence", output="plots")',),
        ),
        ToolSpec(
            "nearest_connector_lines",
            PROC,
            "Shortest connector from each feature of one line layer to the nearest feature of another.",
            (
                ParamSpec("layer_a", "layer-handle", description="Source line layer (one connector per feature)."),
                ParamSpec("layer_b", "layer-handle", description="Line layer searched for the nearest feature."),
                _output(),
            ),
            ('nearest_connector_lines(layer_a="trails", layer_b="roads", output="access")',),
        ),
        ToolSpec(
            "cluster_dispersion",
            PROC,
            "Mean center, standard distance, and deviational-ellipse axes of a point layer.",
            (
                _layer("Point layer."),
                _output("Handle for the one-point summary layer."),
            ),
            ('cluster_dispersion(layer="cases", output="summary")',),
        ),
        ToolSpec(
            "save_shapefile",
            SAVE,
            "Write a layer to the workspace as a shapefile set.",
            (
                _layer(),
                ParamSpec("path", "file-path", description="Destination .shp path, relative to the workspace."),
            ),
            ('save_shapefile(layer="result", path="output/result.shp")',),
        ),
        ToolSpec(
            "save_table_csv",
            SAVE,
            "Write a layer's attribute table as UTF-8 CSV with a header row.",
            (
                _layer(),
                ParamSpec("path", "file-path", description="Destination .csv path, relative to the workspace."),
            ),
            ('save_table_csv(layer="stats", path="output/stats.csv")',),
        ),
        ToolSpec(
            "render_map_image",
            SAVE,
            "Draw one or more layers to a PNG map, auto-fitted with a fixed palette.",
            (
                ParamSpec("layers", "text-list", description="Layer handles to draw, bottom first."),
                ParamSpec("path", "file-path", description="Destination .png path, relative to the workspace."),
            ),
            ('render_map_image(layers=["zones", "roads"], path="output/map.png")',),
        ),
    ]
    return Registry(tools)
