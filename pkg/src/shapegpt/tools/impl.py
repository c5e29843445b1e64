"""Implementations behind every registered tool, plus the invoke dispatcher.

Handlers raise toolkit errors freely; invoke() converts anything raised into
an error ToolResult so the agent loop always gets a readable outcome instead
of a crash.
"""

from __future__ import annotations

import csv
import datetime as _dt

from .. import geom
from ..errors import ShapeGptError, UnknownLayer, WrongGeometryKind
from ..io import read_dataset, write_dataset
from ..model import (
    Dataset,
    Feature,
    FieldDescriptor,
    FieldKind,
    MultiPoint,
    NullShape,
    Point,
    PolyLine,
    Polygon,
    ShapeKind,
    describe_dataset,
)
from .render import render_layers
from .schema import Registry, ToolCall, ToolResult
from .workspace import Workspace

NUMERIC = lambda name: FieldDescriptor(name, FieldKind.NUMERIC, 18, 6)


def _summary(handle: str, d: Dataset) -> str:
    fields = ", ".join(f.name for f in d.fields) or "none"
    return (
        f"{handle}: {d.shape_kind.label} layer with {len(d.features)} feature(s); "
        f"fields: {fields}"
    )


def _ok(ws: Workspace, args, dataset: Dataset, verb: str) -> ToolResult:
    handle = ws.put(args.get("output"), dataset)
    return ToolResult("ok", f"{verb}. {_summary(handle, dataset)}", handle)


def _require_kind(d: Dataset, kinds, what: str) -> None:
    if d.shape_kind not in kinds:
        names = "/".join(k.label for k in kinds)
        raise WrongGeometryKind(f"{what} needs a {names} layer, got {d.shape_kind.label}")


def _truncate_name(name: str) -> str:
    return name.encode("ascii", "replace").decode("ascii")[:10]


def _unique_name(base: str, taken: set[str]) -> str:
    name = _truncate_name(base)
    if name not in taken:
        return name
    n = 2
    while True:
        suffix = f"_{n}"
        cand = _truncate_name(base[: 10 - len(suffix)] + suffix)
        if cand not in taken:
            return cand
        n += 1


def _parse_literal(fd: FieldDescriptor, text: str):
    if fd.kind in (FieldKind.NUMERIC, FieldKind.FLOAT):
        return float(text)
    if fd.kind is FieldKind.LOGICAL:
        return text.strip().lower() in ("t", "true", "y", "yes", "1")
    if fd.kind is FieldKind.DATE:
        t = text.strip().replace("-", "")
        return _dt.date(int(t[0:4]), int(t[4:6]), int(t[6:8]))
    return text


def _replace_or_append_field(fields, fd: FieldDescriptor):
    out = [f for f in fields if f.name != fd.name]
    out.append(fd)
    return tuple(out)


# --- Data Reading -------------------------------------------------------------


def t_read_shapefile(ws, args, cfg):
    path = ws.resolve(args["path"])
    d = read_dataset(path)
    alias = args.get("alias") or path.stem
    handle = ws.put(alias, d)
    return ToolResult("ok", f"read {args['path']}. {_summary(handle, d)}", handle)


def t_describe_shapefile(ws, args, cfg):
    d = ws.layer(args["layer"])
    return ToolResult("ok", describe_dataset(d).to_text(), None)


# --- field / attribute operations ----------------------------------------------


def t_rename_field(ws, args, cfg):
    d = ws.layer(args["layer"])
    old, new = args["old_name"], args["new_name"]
    if not any(f.name == old for f in d.fields):
        raise UnknownLayer(f"layer has no field {old!r}")
    fields = tuple(
        FieldDescriptor(new, f.kind, f.length, f.decimal_count) if f.name == old else f
        for f in d.fields
    )
    feats = [
        Feature(f.geometry, {new if k == old else k: v for k, v in f.attributes.items()})
        for f in d.features
    ]
    out = Dataset.build(d.shape_kind, feats, fields, d.crs_wkt, d.bbox)
    return _ok(ws, args, out, f"renamed field {old} to {new}")


def t_add_field(ws, args, cfg):
    d = ws.layer(args["layer"])
    kind = FieldKind(args["kind"])
    length = {FieldKind.LOGICAL: 1, FieldKind.DATE: 8}.get(kind, args.get("length", 16))
    fd = FieldDescriptor(_truncate_name(args["name"]), kind, length, args.get("decimals", 0))
    value = None
    if args.get("default_value") is not None:
        value = _parse_literal(fd, args["default_value"])
    fields = _replace_or_append_field(d.fields, fd)
    feats = [
        Feature(f.geometry, {**{k: v for k, v in f.attributes.items() if k != fd.name}, fd.name: value})
        for f in d.features
    ]
    out = Dataset.build(d.shape_kind, feats, fields, d.crs_wkt, d.bbox)
    return _ok(ws, args, out, f"added field {fd.name} ({kind.value})")


_ORDERED = {"<": (-1,), "<=": (-1, 0), ">": (1,), ">=": (1, 0), "=": (0,), "!=": (-1, 1)}


def t_filter_features(ws, args, cfg):
    d = ws.layer(args["layer"])
    fd = d.field(args["field"])
    comparator = args["comparator"]
    literal = _parse_literal(fd, args["value"])

    def keep(feat: Feature) -> bool:
        v = feat.attributes[fd.name]
        if comparator == "contains":
            return v is not None and args["value"] in str(v)
        if v is None:
            return comparator == "!="
        lhs = float(v) if isinstance(literal, float) else v
        sign = 0 if lhs == literal else (-1 if lhs < literal else 1)
        return sign in _ORDERED[comparator]

    feats = [f for f in d.features if keep(f)]
    out = Dataset.build(d.shape_kind, feats, d.fields, d.crs_wkt, d.bbox)
    return _ok(ws, args, out, f"kept {len(feats)} of {len(d.features)} features")


def t_add_xy_fields(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POINT,), "add_xy_fields")
    xf = _truncate_name(args.get("x_field", "X"))
    yf = _truncate_name(args.get("y_field", "Y"))
    fields = _replace_or_append_field(_replace_or_append_field(d.fields, NUMERIC(xf)), NUMERIC(yf))
    feats = []
    for f in d.features:
        attrs = {k: v for k, v in f.attributes.items() if k not in (xf, yf)}
        if isinstance(f.geometry, Point):
            attrs[xf] = f.geometry.x
            attrs[yf] = f.geometry.y
        else:
            attrs[xf] = attrs[yf] = None
        feats.append(Feature(f.geometry, attrs))
    out = Dataset.build(d.shape_kind, feats, fields, d.crs_wkt, d.bbox)
    return _ok(ws, args, out, f"added coordinate fields {xf}, {yf}")


def t_calculate_length(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POLYLINE, ShapeKind.POLYGON), "calculate_length")
    name = _truncate_name(args.get("field", "LENGTH"))
    fields = _replace_or_append_field(d.fields, NUMERIC(name))
    feats = []
    for f in d.features:
        attrs = {k: v for k, v in f.attributes.items() if k != name}
        attrs[name] = (
            None if isinstance(f.geometry, NullShape) else geom.polyline_length(f.geometry)
        )
        feats.append(Feature(f.geometry, attrs))
    out = Dataset.build(d.shape_kind, feats, fields, d.crs_wkt, d.bbox)
    return _ok(ws, args, out, f"computed lengths into {name}")


_CRS_WKT = {
    "EPSG:4326": 'GEOGCS["WGS 84",DATUM["WGS_1984"],UNIT["degree",0.0174532925199433]]',
    "EPSG:3857": 'PROJCS["WGS 84 / Pseudo-Mercator",UNIT["metre",1]]',
}


def t_reproject_layer(ws, args, cfg):
    d = ws.layer(args["layer"])
    from_crs, to_crs = args["from_crs"], args["to_crs"]

    def conv(c):
        return geom.reproject(c, from_crs, to_crs)

    def map_geom(g):
        if isinstance(g, Point):
            return Point(*conv(g.coord))
        if isinstance(g, MultiPoint):
            return MultiPoint(tuple(conv(c) for c in g.coords))
        if isinstance(g, PolyLine):
            return PolyLine(tuple(tuple(conv(c) for c in p) for p in g.parts))
        if isinstance(g, Polygon):
            return Polygon(tuple(tuple(conv(c) for c in r) for r in g.rings))
        return g

    feats = [Feature(map_geom(f.geometry), dict(f.attributes)) for f in d.features]
    out = Dataset.build(d.shape_kind, feats, d.fields, _CRS_WKT.get(to_crs))
    return _ok(ws, args, out, f"reprojected {from_crs} -> {to_crs}")


# --- buffers and overlay --------------------------------------------------------


def _map_geometry(d: Dataset, fn, out_kind: ShapeKind, verb, ws, args, keep_empty=False):
    feats = []
    for f in d.features:
        if isinstance(f.geometry, NullShape):
            continue
        g = fn(f.geometry)
        if g is None and not keep_empty:
            continue
        feats.append(Feature(g, dict(f.attributes)))
    out = Dataset.build(out_kind, feats, d.fields, d.crs_wkt)
    return _ok(ws, args, out, verb)


def t_buffer(ws, args, cfg):
    d = ws.layer(args["layer"])
    dist = float(args["distance"])
    return _map_geometry(
        d,
        lambda g: geom.buffer(g, dist, cfg),
        ShapeKind.POLYGON,
        f"buffered by {dist}",
        ws,
        args,
    )


def t_inward_buffer(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POLYLINE, ShapeKind.POLYGON), "inward_buffer")
    dist = float(args["distance"])
    return _map_geometry(
        d,
        lambda g: geom.inward_buffer(g, dist, cfg),
        ShapeKind.POLYGON,
        f"built inward buffer of depth {dist}",
        ws,
        args,
    )


def t_multi_ring_buffer(ws, args, cfg):
    d = ws.layer(args["layer"])
    distances = [float(x) for x in args["distances"]]
    name = _unique_name("RING_DIST", {f.name for f in d.fields})
    fields = d.fields + (NUMERIC(name),)
    feats = []
    for f in d.features:
        if isinstance(f.geometry, NullShape):
            continue
        for ring_poly, dist in geom.multi_ring_buffer(f.geometry, distances, cfg):
            if ring_poly.is_empty:
                continue
            feats.append(Feature(ring_poly, {**f.attributes, name: dist}))
    out = Dataset.build(ShapeKind.POLYGON, feats, fields, d.crs_wkt)
    return _ok(ws, args, out, f"built {len(distances)} buffer ring(s) per feature")


def _layer_region(d: Dataset) -> Polygon:
    """All polygon rings of a layer merged into one even-odd region."""
    sets = [f.geometry.rings for f in d.features if isinstance(f.geometry, Polygon)]
    if not sets:
        raise WrongGeometryKind("boundary layer has no polygon features")
    if len(sets) == 1:
        return Polygon(sets[0])
    return geom.union_many(sets, 1e-9)


def t_clip(ws, args, cfg):
    d = ws.layer(args["layer"])
    boundary = _layer_region(ws.layer(args["boundary_layer"]))
    out = geom.clip_dataset(d, boundary, cfg)
    return _ok(ws, args, out, f"clipped to boundary ({len(out.features)} feature(s) kept)")


def _merge_fields(left, right):
    """Right fields renamed to dodge collisions with left (DBF 10-byte names)."""
    taken = {f.name for f in left}
    mapping = {}
    merged = list(left)
    for f in right:
        new = _unique_name(f.name if f.name not in taken else f.name[:8] + "_2", taken)
        taken.add(new)
        mapping[f.name] = new
        merged.append(FieldDescriptor(new, f.kind, f.length, f.decimal_count))
    return tuple(merged), mapping


def t_overlay_intersection(ws, args, cfg):
    da = ws.layer(args["layer_a"])
    db = ws.layer(args["layer_b"])
    _require_kind(da, (ShapeKind.POLYGON,), "overlay_intersection")
    _require_kind(db, (ShapeKind.POLYGON,), "overlay_intersection")
    same = args["layer_a"] == args["layer_b"]
    fields, mapping = _merge_fields(da.fields, db.fields)
    feats = []
    for i, fa in enumerate(da.features):
        if not isinstance(fa.geometry, Polygon):
            continue
        for j, fb in enumerate(db.features):
            if not isinstance(fb.geometry, Polygon):
                continue
            if same and j <= i:
                continue
            piece = geom.boolean_op("intersection", fa.geometry, fb.geometry, cfg.snap_epsilon)
            if piece.is_empty:
                continue
            attrs = dict(fa.attributes)
            for k, v in fb.attributes.items():
                attrs[mapping[k]] = v
            feats.append(Feature(piece, attrs))
    out = Dataset.build(ShapeKind.POLYGON, feats, fields, da.crs_wkt)
    return _ok(ws, args, out, f"found {len(feats)} overlapping pair(s)")


_PREDICATES = {
    "intersects": geom.geoms_intersect,
    "contains": geom.geom_contains,
    "within": geom.geom_within,
}


def t_spatial_join(ws, args, cfg):
    target = ws.layer(args["target_layer"])
    join = ws.layer(args["join_layer"])
    pred = _PREDICATES[args.get("predicate", "intersects")]
    fields, mapping = _merge_fields(target.fields, join.fields)
    feats = []
    matched = 0
    for ft in target.features:
        attrs = dict(ft.attributes)
        hit = None
        if not isinstance(ft.geometry, NullShape):
            for fj in join.features:
                if isinstance(fj.geometry, NullShape):
                    continue
                if pred(ft.geometry, fj.geometry, cfg.snap_epsilon):
                    hit = fj
                    break
        for k in mapping.values():
            attrs[k] = None
        if hit is not None:
            matched += 1
            for k, v in hit.attributes.items():
                attrs[mapping[k]] = v
        feats.append(Feature(ft.geometry, attrs))
    out = Dataset.build(target.shape_kind, feats, fields, target.crs_wkt, target.bbox)
    return _ok(ws, args, out, f"joined attributes onto {matched} of {len(feats)} feature(s)")


# --- tessellation and rectangles -------------------------------------------------


def t_voronoi_points(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POINT,), "voronoi_points")
    seeds = []
    sources = []
    for i, f in enumerate(d.features):
        if isinstance(f.geometry, Point):
            seeds.append(f.geometry.coord)
            sources.append(i)
    cells = geom.voronoi_points(seeds, d.bbox, cfg)
    feats = [
        Feature(poly, dict(d.features[sources[idx]].attributes)) for poly, idx in cells
    ]
    out = Dataset.build(ShapeKind.POLYGON, feats, d.fields, d.crs_wkt)
    return _ok(ws, args, out, f"built {len(feats)} Thiessen cell(s)")


def t_voronoi_features(ws, args, cfg):
    d = ws.layer(args["layer"])
    regions = geom.voronoi_features(d, d.bbox, cfg)
    live = [f for f in d.features if not isinstance(f.geometry, NullShape)]
    feats = [Feature(poly, dict(live[fi].attributes)) for poly, fi in regions]
    out = Dataset.build(ShapeKind.POLYGON, feats, d.fields, d.crs_wkt)
    return _ok(ws, args, out, f"built {len(feats)} nearest-feature region(s)")


def t_minimum_bounding_rectangle(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POINT, ShapeKind.MULTIPOINT), "minimum_bounding_rectangle")
    mode = args.get("mode", "min_area")
    group_field = args.get("group_field")
    groups: dict = {}
    for f in d.features:
        key = f.attributes.get(group_field) if group_field else None
        for c in _coords_of(f.geometry):
            groups.setdefault(key, []).append(c)
    fields = []
    if group_field:
        fields.append(d.field(group_field))
    fields.append(FieldDescriptor("DEGENERATE", FieldKind.LOGICAL, 1))
    feats = []
    for key in sorted(groups, key=lambda k: (k is None, str(k))):
        rect = geom.min_bounding_rect(groups[key], mode)
        attrs = {"DEGENERATE": rect.degenerate}
        if group_field:
            attrs[group_field] = key
        feats.append(Feature(rect.polygon, attrs))
    out = Dataset.build(ShapeKind.POLYGON, feats, fields, d.crs_wkt)
    return _ok(ws, args, out, f"built {len(feats)} bounding rectangle(s) ({mode})")


def _coords_of(g):
    if isinstance(g, Point):
        return [g.coord]
    if isinstance(g, MultiPoint):
        return list(g.coords)
    return []


# --- geometry conversions ---------------------------------------------------------


def t_vertices_to_points(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POLYLINE, ShapeKind.POLYGON), "vertices_to_points")
    feats = []
    for f in d.features:
        if isinstance(f.geometry, NullShape):
            continue
        for c in geom.vertices_to_points(f.geometry):
            feats.append(Feature(Point(*c), dict(f.attributes)))
    out = Dataset.build(ShapeKind.POINT, feats, d.fields, d.crs_wkt)
    return _ok(ws, args, out, f"extracted {len(feats)} vertex point(s)")


def t_lines_to_polygons(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POLYLINE,), "lines_to_polygons")
    return _map_geometry(
        d,
        lambda g: geom.lines_to_polygons(g, cfg.snap_epsilon),
        ShapeKind.POLYGON,
        "closed lines into polygons",
        ws,
        args,
    )


def t_polygons_to_lines(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POLYGON,), "polygons_to_lines")
    return _map_geometry(
        d, geom.polygons_to_lines, ShapeKind.POLYLINE, "converted polygons to lines", ws, args
    )


def t_points_to_line(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POINT,), "points_to_line")
    group_field = args.get("group_field")
    order_field = args.get("order_field")
    groups: dict = {}
    for f in d.features:
        if not isinstance(f.geometry, Point):
            continue
        key = f.attributes.get(group_field) if group_field else None
        groups.setdefault(key, []).append(f)
    feats = []
    skipped = 0
    for key in sorted(groups, key=lambda k: (k is None, str(k))):
        rows = groups[key]
        if order_field:
            rows = sorted(rows, key=lambda f: (f.attributes.get(order_field) is None,
                                               f.attributes.get(order_field)))
        if len(rows) < 2:
            skipped += 1
            continue
        start = rows[0].geometry.coord
        end = rows[-1].geometry.coord
        line = geom.points_to_line(start, end, cfg.snap_epsilon)
        feats.append(Feature(line, dict(rows[0].attributes)))
    out = Dataset.build(ShapeKind.POLYLINE, feats, d.fields, d.crs_wkt)
    note = f"; skipped {skipped} single-point group(s)" if skipped else ""
    return _ok(ws, args, out, f"drew {len(feats)} line(s){note}")


def t_split_polygons_by_lines(ws, args, cfg):
    dp = ws.layer(args["polygon_layer"])
    dl = ws.layer(args["line_layer"])
    _require_kind(dp, (ShapeKind.POLYGON,), "split_polygons_by_lines")
    _require_kind(dl, (ShapeKind.POLYLINE,), "split_polygons_by_lines")
    blades = [f.geometry for f in dl.features if isinstance(f.geometry, PolyLine)]
    feats = []
    for f in dp.features:
        if not isinstance(f.geometry, Polygon):
            continue
        for piece in geom.split_polygon_by_lines(f.geometry, blades, cfg):
            feats.append(Feature(piece, dict(f.attributes)))
    out = Dataset.build(ShapeKind.POLYGON, feats, dp.fields, dp.crs_wkt)
    return _ok(ws, args, out, f"split into {len(feats)} polygon(s)")


def t_nearest_connector_lines(ws, args, cfg):
    da = ws.layer(args["layer_a"])
    db = ws.layer(args["layer_b"])
    _require_kind(da, (ShapeKind.POLYLINE,), "nearest_connector_lines")
    _require_kind(db, (ShapeKind.POLYLINE,), "nearest_connector_lines")
    name = _unique_name("DIST", {f.name for f in da.fields})
    fields = da.fields + (NUMERIC(name),)
    feats = []
    for fa in da.features:
        if not isinstance(fa.geometry, PolyLine):
            continue
        best = None
        for fb in db.features:
            if not isinstance(fb.geometry, PolyLine):
                continue
            conn, dist = geom.nearest_connector(fa.geometry, fb.geometry)
            if best is None or dist < best[1]:
                best = (conn, dist)
        if best is not None:
            feats.append(Feature(best[0], {**fa.attributes, name: best[1]}))
    out = Dataset.build(ShapeKind.POLYLINE, feats, fields, da.crs_wkt)
    return _ok(ws, args, out, f"built {len(feats)} connector line(s)")


def t_cluster_dispersion(ws, args, cfg):
    d = ws.layer(args["layer"])
    _require_kind(d, (ShapeKind.POINT, ShapeKind.MULTIPOINT), "cluster_dispersion")
    pts = [c for f in d.features for c in _coords_of(f.geometry)]
    stats = geom.dispersion_stats(pts, cfg.snap_epsilon)
    fields = (
        FieldDescriptor("N_POINTS", FieldKind.NUMERIC, 9, 0),
        NUMERIC("STD_DIST"),
        NUMERIC("ORIENT_DEG"),
        NUMERIC("SIG_MAJOR"),
        NUMERIC("SIG_MINOR"),
    )
    feat = Feature(
        Point(*stats.mean_center),
        {
            "N_POINTS": len(pts),
            "STD_DIST": stats.standard_distance,
            "ORIENT_DEG": stats.orientation_deg,
            "SIG_MAJOR": stats.sigma_major,
            "SIG_MINOR": stats.sigma_minor,
        },
    )
    out = Dataset.build(ShapeKind.POINT, [feat], fields, d.crs_wkt)
    handle = ws.put(args.get("output"), out)
    msg = (
        f"mean center ({stats.mean_center[0]:.6g}, {stats.mean_center[1]:.6g}), "
        f"standard distance {stats.standard_distance:.6g}, "
        f"orientation {stats.orientation_deg:.4g} deg, "
        f"sigma {stats.sigma_major:.6g}/{stats.sigma_minor:.6g}. "
        + _summary(handle, out)
    )
    return ToolResult("ok", msg, handle)


# --- Saving Data ------------------------------------------------------------------


def t_save_shapefile(ws, args, cfg):
    d = ws.layer(args["layer"])
    path = ws.resolve(args["path"], for_write=True)
    written = write_dataset(d, path)
    rels = [ws.record_artifact(p) for p in written]
    return ToolResult("ok", f"saved {args['layer']} as {', '.join(rels)}", None)


def _csv_value(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, _dt.date):
        return v.isoformat()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def t_save_table_csv(ws, args, cfg):
    d = ws.layer(args["layer"])
    path = ws.resolve(args["path"], for_write=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow([fd.name for fd in d.fields])
        for feat in d.features:
            writer.writerow([_csv_value(feat.attributes[fd.name]) for fd in d.fields])
    rel = ws.record_artifact(path)
    return ToolResult("ok", f"wrote {len(d.features)} row(s) to {rel}", None)


def t_render_map_image(ws, args, cfg):
    datasets = [ws.layer(h) for h in args["layers"]]
    path = ws.resolve(args["path"], for_write=True)
    render_layers(datasets, path)
    rel = ws.record_artifact(path)
    return ToolResult("ok", f"rendered {len(datasets)} layer(s) to {rel}", None)


HANDLERS = {
    "read_shapefile": t_read_shapefile,
    "describe_shapefile": t_describe_shapefile,
    "rename_field": t_rename_field,
    "add_field": t_add_field,
    "filter_features": t_filter_features,
    "add_xy_fields": t_add_xy_fields,
    "calculate_length": t_calculate_length,
    "reproject_layer": t_reproject_layer,
    "buffer": t_buffer,
    "inward_buffer": t_inward_buffer,
    "multi_ring_buffer": t_multi_ring_buffer,
    "clip": t_clip,
    "overlay_intersection": t_overlay_intersection,
    "spatial_join": t_spatial_join,
    "voronoi_points": t_voronoi_points,
    "voronoi_features": t_voronoi_features,
    "minimum_bounding_rectangle": t_minimum_bounding_rectangle,
    "vertices_to_points": t_vertices_to_points,
    "lines_to_polygons": t_lines_to_polygons,
    "polygons_to_lines": t_polygons_to_lines,
    "points_to_line": t_points_to_line,
    "split_polygons_by_lines": t_split_polygons_by_lines,
    "nearest_connector_lines": t_nearest_connector_lines,
    "cluster_dispersion": t_cluster_dispersion,
    "save_shapefile": t_save_shapefile,
    "save_table_csv": t_save_table_csv,
    "render_map_image": t_render_map_image,
}


def apply_defaults(spec, arguments: dict) -> dict:
    args = dict(arguments)
    for p in spec.params:
        if not p.required and p.name not in args and p.default is not None:
            args[p.name] = p.default
    return args


def invoke(call: ToolCall, ws: Workspace, registry: Registry, cfg=geom.DEFAULT_CONFIG) -> ToolResult:
    """Run a validated call; any raised error becomes an error ToolResult."""
    spec = registry.get(call.name)
    handler = HANDLERS.get(call.name)
    if spec is None or handler is None:
        return ToolResult("error", f"no such tool {call.name!r}", None, "UnknownTool")
    try:
        return handler(ws, apply_defaults(spec, call.arguments), cfg)
    except ShapeGptError as e:
        return ToolResult("error", f"{e.kind}: {e}", None, e.kind)
    except Exception as e:  # tool bugs must not kill the agent loop
        return ToolResult("error", f"ExecutionError: {e!r}", None, "ExecutionError")
