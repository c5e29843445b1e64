"""Synthetic benchmark suite: 42 desk-scale tasks in the 22:7:7:6 category mix.

Inputs are generated deterministically per task id; expected outputs are
produced by replaying each task's ground-truth trace through the tool layer,
so the replay fixed-point (criterion: scripted replay grades 100%) holds by
construction while geometry correctness is covered by the module oracles.
"""

from __future__ import annotations

import json
import math
import random
import shutil
import tempfile
from pathlib import Path

from ..geom import DEFAULT_CONFIG
from ..io import write_dataset
from ..model import (
    Dataset,
    Feature,
    FieldDescriptor,
    FieldKind,
    Point,
    PolyLine,
    Polygon,
    ShapeKind,
)
from ..tools import ToolCall, Workspace, default_registry, invoke
from .suite import GroundTruthTrace, TaskSpec, task_to_dict, trace_to_dict

NAME = FieldDescriptor("NAME", FieldKind.CHARACTER, 12)
POP = FieldDescriptor("POP", FieldKind.NUMERIC, 8, 0)
ACTIVE = FieldDescriptor("ACTIVE", FieldKind.LOGICAL, 1)
SPECIES = FieldDescriptor("SPECIES", FieldKind.CHARACTER, 10)
TRIP = FieldDescriptor("TRIP", FieldKind.CHARACTER, 4)
SEQ = FieldDescriptor("SEQ", FieldKind.NUMERIC, 4, 0)
OWNER = FieldDescriptor("OWNER", FieldKind.CHARACTER, 10)


def _rng(task_id: str) -> random.Random:
    return random.Random(f"shapegpt-suite:{task_id}")


def _points(rng, n, span=1000.0, fields=(NAME, POP, ACTIVE)):
    feats = []
    for i in range(n):
        attrs = {}
        for fd in fields:
            if fd is NAME:
                attrs["NAME"] = f"pt_{i:03d}{rng.choice('abcde')}"
            elif fd is POP:
                attrs["POP"] = rng.randint(10, 9999)
            elif fd is ACTIVE:
                attrs["ACTIVE"] = rng.random() < 0.5
            elif fd is SPECIES:
                attrs["SPECIES"] = rng.choice(["heron", "crane", "ibis"])
        feats.append(Feature(Point(rng.uniform(0, span), rng.uniform(0, span)), attrs))
    return Dataset.build(ShapeKind.POINT, feats, fields)


def _open_lines(rng, n, span=1000.0):
    feats = []
    for i in range(n):
        x, y = rng.uniform(0, span), rng.uniform(0, span)
        pts = [(x, y)]
        for _ in range(rng.randint(2, 4)):
            x += rng.uniform(-span / 5, span / 5)
            y += rng.uniform(-span / 5, span / 5)
            pts.append((x, y))
        feats.append(Feature(PolyLine((tuple(pts),)), {"NAME": f"ln_{i:03d}"}))
    return Dataset.build(ShapeKind.POLYLINE, feats, [NAME])


def _star_ring(rng, cx, cy, rmax, n):
    ring = []
    for i in range(n):
        a = 2 * math.pi * (i + rng.uniform(0.0, 0.9)) / n
        r = rng.uniform(0.4, 1.0) * rmax
        ring.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    ring.append(ring[0])
    ring.reverse()  # clockwise
    return tuple(ring)


def _ring_lines(rng, n, span=1000.0):
    """Closed line features (each part a closed ring)."""
    feats = []
    for i in range(n):
        ring = _star_ring(rng, rng.uniform(200, span - 200), rng.uniform(200, span - 200),
                          rng.uniform(60, 150), rng.randint(5, 9))
        feats.append(Feature(PolyLine((ring,)), {"NAME": f"ring_{i:03d}"}))
    return Dataset.build(ShapeKind.POLYLINE, feats, [NAME])


def _polygons(rng, n, span=1000.0, fields=(NAME, OWNER)):
    feats = []
    for i in range(n):
        ring = _star_ring(rng, rng.uniform(150, span - 150), rng.uniform(150, span - 150),
                          rng.uniform(80, 180), rng.randint(5, 9))
        attrs = {}
        for fd in fields:
            if fd is NAME:
                attrs["NAME"] = f"pg_{i:03d}"
            elif fd is OWNER:
                attrs["OWNER"] = rng.choice(["city", "state", "trust"])
            elif fd is POP:
                attrs["POP"] = rng.randint(1, 5000)
        feats.append(Feature(Polygon((ring,)), attrs))
    return Dataset.build(ShapeKind.POLYGON, feats, fields)


def _overlapping_zone_pair(rng, span=1000.0):
    """Two polygon layers guaranteed to overlap pairwise somewhere."""
    a, b = [], []
    for i in range(3):
        cx, cy = rng.uniform(250, span - 250), rng.uniform(250, span - 250)
        a.append(Feature(Polygon((_star_ring(rng, cx, cy, 180, 7),)), {"NAME": f"a_{i}"}))
        b.append(
            Feature(
                Polygon((_star_ring(rng, cx + rng.uniform(-60, 60), cy + rng.uniform(-60, 60), 170, 6),)),
                {"NAME": f"b_{i}"},
            )
        )
    return (
        Dataset.build(ShapeKind.POLYGON, a, [NAME]),
        Dataset.build(ShapeKind.POLYGON, b, [NAME]),
    )


def _gps_points(rng):
    feats = []
    for trip in ("t1", "t2", "t3"):
        x, y = rng.uniform(0, 500), rng.uniform(0, 500)
        for seq in range(1, rng.randint(3, 5)):
            x += rng.uniform(20, 80)
            y += rng.uniform(-40, 60)
            feats.append(Feature(Point(x, y), {"TRIP": trip, "SEQ": seq}))
    return Dataset.build(ShapeKind.POINT, feats, [TRIP, SEQ])


def _grouped_points(rng):
    feats = []
    for species, (cx, cy) in (("heron", (200, 200)), ("crane", (700, 600)), ("ibis", (300, 800))):
        for _ in range(rng.randint(4, 7)):
            feats.append(
                Feature(
                    Point(cx + rng.uniform(-90, 90), cy + rng.uniform(-90, 90)),
                    {"SPECIES": species},
                )
            )
    return Dataset.build(ShapeKind.POINT, feats, [SPECIES])


def _deg_points(rng, n=6):
    feats = [
        Feature(
            Point(rng.uniform(-170, 170), rng.uniform(-80, 80)),
            {"NAME": f"pl_{i}"},
        )
        for i in range(n)
    ]
    return Dataset.build(ShapeKind.POINT, feats, [NAME])


def _mercator_points(rng, n=6):
    feats = [
        Feature(
            Point(rng.uniform(-1.8e7, 1.8e7), rng.uniform(-1.5e7, 1.5e7)),
            {"NAME": f"pm_{i}"},
        )
        for i in range(n)
    ]
    return Dataset.build(ShapeKind.POINT, feats, [NAME])


def _call(tool, **arguments) -> dict:
    return {"name": tool, "arguments": arguments}


def _read(path, alias):
    return _call("read_shapefile", path=f"input/{path}", alias=alias)


def _save(layer, path):
    return _call("save_shapefile", layer=layer, path=f"output/{path}")


def _task(tid, category, gtype, description, prompt, inputs, calls, outputs):
    return {
        "task_id": tid,
        "category": category,
        "geometry_type": gtype,
        "description": description,
        "user_prompt": prompt,
        "inputs": inputs,  # {filename: dataset builder(rng)}
        "calls": calls,
        "outputs": [f"output/{o}" for o in outputs],
    }


GEO = "Geometric Operations"
QUERY = "Queries and Computations"
DIST = "Distance and Direction"
OTHER = "Other"


def task_definitions() -> list[dict]:
    return [
        # --- Geometric Operations (22) ---------------------------------------
        _task("task_g01", GEO, "PolyLine", "Compute the length of every road segment.",
              "Calculate the length of each feature in roads.shp and save the result.",
              {"roads.shp": lambda r: _open_lines(r, 6)},
              [_read("roads.shp", "roads"),
               _call("calculate_length", layer="roads", field="LENGTH", output="roads_len"),
               _save("roads_len", "roads_len.shp")],
              ["roads_len.shp"]),
        _task("task_g02", GEO, "Point", "Clip wells to the study boundary.",
              "Clip wells.shp with boundary.shp and save the wells inside.",
              {"wells.shp": lambda r: _points(r, 12),
               "boundary.shp": lambda r: _polygons(r, 1, fields=(NAME,))},
              [_read("wells.shp", "wells"), _read("boundary.shp", "boundary"),
               _call("clip", layer="wells", boundary_layer="boundary", output="inside"),
               _save("inside", "wells_inside.shp")],
              ["wells_inside.shp"]),
        _task("task_g03", GEO, "Polygon", "Convert parcel polygons to boundary lines.",
              "Convert the features of parcels.shp into line features and save them.",
              {"parcels.shp": lambda r: _polygons(r, 5)},
              [_read("parcels.shp", "parcels"),
               _call("polygons_to_lines", layer="parcels", output="edges"),
               _save("edges", "parcel_lines.shp")],
              ["parcel_lines.shp"]),
        _task("task_g04", GEO, "PolyLine", "Extract the vertices of every route.",
              "Convert the vertices of routes.shp into point features and save them.",
              {"routes.shp": lambda r: _open_lines(r, 4)},
              [_read("routes.shp", "routes"),
               _call("vertices_to_points", layer="routes", output="verts"),
               _save("verts", "route_points.shp")],
              ["route_points.shp"]),
        _task("task_g05", GEO, "PolyLine", "Close boundary lines into polygons.",
              "Convert the line features of outlines.shp into polygons and save them.",
              {"outlines.shp": lambda r: _ring_lines(r, 4)},
              [_read("outlines.shp", "outlines"),
               _call("lines_to_polygons", layer="outlines", output="regions"),
               _save("regions", "regions.shp")],
              ["regions.shp"]),
        _task("task_g06", GEO, "Polygon", "Overlay two zoning layers.",
              "Perform overlay analysis on zones_a.shp and zones_b.shp, keeping geometry and attributes of the overlaps.",
              {"zones_a.shp": lambda r: _overlapping_zone_pair(r)[0],
               "zones_b.shp": lambda r: _overlapping_zone_pair(r)[1]},
              [_read("zones_a.shp", "za"), _read("zones_b.shp", "zb"),
               _call("overlay_intersection", layer_a="za", layer_b="zb", output="overlap"),
               _save("overlap", "overlap.shp")],
              ["overlap.shp"]),
        _task("task_g07", GEO, "Point", "Buffer the wells.",
              "Create 50-unit buffer zones around each feature of wells.shp and save them.",
              {"wells.shp": lambda r: _points(r, 8)},
              [_read("wells.shp", "wells"),
               _call("buffer", layer="wells", distance=50.0, output="buf"),
               _save("buf", "well_buffers.shp")],
              ["well_buffers.shp"]),
        _task("task_g08", GEO, "Point", "Thiessen polygons for the stations.",
              "Create Thiessen polygons from stations.shp and save the cells.",
              {"stations.shp": lambda r: _points(r, 9)},
              [_read("stations.shp", "stations"),
               _call("voronoi_points", layer="stations", output="cells"),
               _save("cells", "cells.shp")],
              ["cells.shp"]),
        _task("task_g09", GEO, "Point", "Bounding rectangles per species.",
              "Create the minimum bounding rectangle of each SPECIES group in sightings.shp and save them.",
              {"sightings.shp": lambda r: _grouped_points(r)},
              [_read("sightings.shp", "sightings"),
               _call("minimum_bounding_rectangle", layer="sightings", group_field="SPECIES", output="mbr"),
               _save("mbr", "ranges.shp")],
              ["ranges.shp"]),
        _task("task_g10", GEO, "PolyLine", "Inner buffer of closed boundaries.",
              "Create an internal buffer of depth 20 inside the closed lines of fences.shp and save it.",
              {"fences.shp": lambda r: _ring_lines(r, 3)},
              [_read("fences.shp", "fences"),
               _call("inward_buffer", layer="fences", distance=20.0, output="band"),
               _save("band", "inner_band.shp")],
              ["inner_band.shp"]),
        _task("task_g11", GEO, "Point", "Disaster impact rings and affected roads.",
              "Generate impact rings at 100, 200 and 400 units around epicenter.shp, save them, then clip roads.shp to the rings and save the affected roads.",
              {"epicenter.shp": lambda r: _points(r, 1, span=200),
               "roads.shp": lambda r: _open_lines(r, 6, span=900)},
              [_read("epicenter.shp", "epicenter"),
               _call("multi_ring_buffer", layer="epicenter", distances=[100.0, 200.0, 400.0], output="rings"),
               _save("rings", "impact_rings.shp"),
               _read("roads.shp", "roads"),
               _call("clip", layer="roads", boundary_layer="rings", output="affected"),
               _save("affected", "affected_roads.shp")],
              ["impact_rings.shp", "affected_roads.shp"]),
        _task("task_g12", GEO, "Polygon", "Extract polygon vertices.",
              "Extract the vertices of parcels.shp as point features with their attributes and save them.",
              {"parcels.shp": lambda r: _polygons(r, 4)},
              [_read("parcels.shp", "parcels"),
               _call("vertices_to_points", layer="parcels", output="corners"),
               _save("corners", "corners.shp")],
              ["corners.shp"]),
        _task("task_g13", GEO, "Point", "Dispersion of clustered cases.",
              "Analyze the spatial distribution of cases.shp (centrality, direction, standard distance) and save the summary.",
              {"cases.shp": lambda r: _points(r, 20, span=400)},
              [_read("cases.shp", "cases"),
               _call("cluster_dispersion", layer="cases", output="summary"),
               _save("summary", "dispersion.shp")],
              ["dispersion.shp"]),
        _task("task_g14", GEO, "Point", "Add coordinate fields.",
              "Add X and Y coordinate fields to wells.shp and save the updated dataset.",
              {"wells.shp": lambda r: _points(r, 7)},
              [_read("wells.shp", "wells"),
               _call("add_xy_fields", layer="wells", output="wells_xy"),
               _save("wells_xy", "wells_xy.shp")],
              ["wells_xy.shp"]),
        _task("task_g15", GEO, "Point", "Connect trip start and end points.",
              "Create lines from the start and end points of each TRIP in gps.shp, ordered by SEQ, and save them.",
              {"gps.shp": lambda r: _gps_points(r)},
              [_read("gps.shp", "gps"),
               _call("points_to_line", layer="gps", group_field="TRIP", order_field="SEQ", output="trips"),
               _save("trips", "trip_lines.shp")],
              ["trip_lines.shp"]),
        _task("task_g16", GEO, "PolyLine", "Nearest connectors between line layers.",
              "Create the nearest perpendicular connector from each feature of trails.shp to streams.shp and save the connectors.",
              {"trails.shp": lambda r: _open_lines(r, 3, span=400),
               "streams.shp": lambda r: _open_lines(r, 3, span=400)},
              [_read("trails.shp", "trails"), _read("streams.shp", "streams"),
               _call("nearest_connector_lines", layer_a="trails", layer_b="streams", output="conn"),
               _save("conn", "connectors.shp")],
              ["connectors.shp"]),
        _task("task_g17", GEO, "Polygon", "Extract overlaps between habitat layers.",
              "Identify and extract the overlapping areas between habitat_a.shp and habitat_b.shp and save them.",
              {"habitat_a.shp": lambda r: _overlapping_zone_pair(r)[0],
               "habitat_b.shp": lambda r: _overlapping_zone_pair(r)[1]},
              [_read("habitat_a.shp", "ha"), _read("habitat_b.shp", "hb"),
               _call("overlay_intersection", layer_a="ha", layer_b="hb", output="shared"),
               _save("shared", "shared_habitat.shp")],
              ["shared_habitat.shp"]),
        _task("task_g18", GEO, "Polygon", "Overlaps within one layer.",
              "Analyze the overlapping areas between the polygon features of claims.shp and save the overlaps.",
              {"claims.shp": lambda r: Dataset.build(
                  ShapeKind.POLYGON,
                  [Feature(Polygon((_star_ring(r, 300 + 120 * i, 300 + 40 * i, 160, 7),)),
                           {"NAME": f"claim_{i}"}) for i in range(3)],
                  [NAME])},
              [_read("claims.shp", "claims"),
               _call("overlay_intersection", layer_a="claims", layer_b="claims", output="dupes"),
               _save("dupes", "claim_overlaps.shp")],
              ["claim_overlaps.shp"]),
        _task("task_g19", GEO, "Point", "Allocate space by distance.",
              "Generate Voronoi polygons from facilities.shp, create a 120-unit buffer around the points, clip the buffer with the Voronoi polygons, and save the result.",
              {"facilities.shp": lambda r: _points(r, 5, span=800, fields=(NAME,))},
              [_read("facilities.shp", "fac"),
               _call("voronoi_points", layer="fac", output="cells"),
               _call("buffer", layer="fac", distance=120.0, output="buf"),
               _call("clip", layer="buf", boundary_layer="cells", output="alloc"),
               _save("alloc", "allocated.shp")],
              ["allocated.shp"]),
        _task("task_g20", GEO, "Polygon", "Thiessen regions of polygon features.",
              "Create Thiessen polygons for the polygon features of districts.shp so each area maps to its nearest district, and save them.",
              {"districts.shp": lambda r: _polygons(r, 3, span=900)},
              [_read("districts.shp", "districts"),
               _call("voronoi_features", layer="districts", output="regions"),
               _save("regions", "district_regions.shp")],
              ["district_regions.shp"]),
        _task("task_g21", GEO, "Polygon", "Split polygons with lines.",
              "Split the polygons of field.shp using the lines of fence.shp and save the resulting pieces.",
              {"field.shp": lambda r: _polygons(r, 2, span=600),
               "fence.shp": lambda r: Dataset.build(
                   ShapeKind.POLYLINE,
                   [Feature(PolyLine((((-50.0, 300.0), (700.0, 310.0)),)), {"NAME": "cut1"}),
                    Feature(PolyLine((((300.0, -50.0), (320.0, 700.0)),)), {"NAME": "cut2"})],
                   [NAME])},
              [_read("field.shp", "field"), _read("fence.shp", "fence"),
               _call("split_polygons_by_lines", polygon_layer="field", line_layer="fence", output="plots"),
               _save("plots", "plots.shp")],
              ["plots.shp"]),
        _task("task_g22", GEO, "PolyLine", "Thiessen regions for line features.",
              "Generate Thiessen polygons indicating the nearest region to each line of rivers.shp and save them.",
              {"rivers.shp": lambda r: _open_lines(r, 3, span=700)},
              [_read("rivers.shp", "rivers"),
               _call("voronoi_features", layer="rivers", output="basins"),
               _save("basins", "basins.shp")],
              ["basins.shp"]),
        # --- Queries and Computations (7) -------------------------------------
        _task("task_q01", QUERY, "Point", "Filter by population.",
              "Keep the features of cities.shp with POP greater than 1000 and save them.",
              {"cities.shp": lambda r: _points(r, 15)},
              [_read("cities.shp", "cities"),
               _call("filter_features", layer="cities", field="POP", comparator=">", value="1000", output="big"),
               _save("big", "big_cities.shp")],
              ["big_cities.shp"]),
        _task("task_q02", QUERY, "Point", "Filter by name substring.",
              "Keep the features of cities.shp whose NAME contains 'a' and save them.",
              {"cities.shp": lambda r: _points(r, 12)},
              [_read("cities.shp", "cities"),
               _call("filter_features", layer="cities", field="NAME", comparator="contains", value="a", output="match"),
               _save("match", "a_cities.shp")],
              ["a_cities.shp"]),
        _task("task_q03", QUERY, "Point", "Join zone attributes to points.",
              "Spatially join the attributes of zones.shp onto sites.shp where they intersect and save the joined layer.",
              {"sites.shp": lambda r: _points(r, 10, span=800),
               "zones.shp": lambda r: _polygons(r, 3, span=800)},
              [_read("sites.shp", "sites"), _read("zones.shp", "zones"),
               _call("spatial_join", target_layer="sites", join_layer="zones",
                     predicate="intersects", output="joined"),
               _save("joined", "sites_zoned.shp")],
              ["sites_zoned.shp"]),
        _task("task_q04", QUERY, "Point", "Join by containment.",
              "Join districts.shp attributes onto homes.shp for homes within a district and save the result.",
              {"homes.shp": lambda r: _points(r, 12, span=700),
               "districts.shp": lambda r: _polygons(r, 2, span=700)},
              [_read("homes.shp", "homes"), _read("districts.shp", "districts"),
               _call("spatial_join", target_layer="homes", join_layer="districts",
                     predicate="within", output="homes_d"),
               _save("homes_d", "homes_districts.shp")],
              ["homes_districts.shp"]),
        _task("task_q05", QUERY, "Point", "Export the attribute table.",
              "Save the attribute table of cities.shp as CSV.",
              {"cities.shp": lambda r: _points(r, 9)},
              [_read("cities.shp", "cities"),
               _call("save_table_csv", layer="cities", path="output/cities.csv")],
              ["cities.csv"]),
        _task("task_q06", QUERY, "Point", "Filter active sensors.",
              "Keep the features of sensors.shp where ACTIVE equals T and save them.",
              {"sensors.shp": lambda r: _points(r, 14)},
              [_read("sensors.shp", "sensors"),
               _call("filter_features", layer="sensors", field="ACTIVE", comparator="=", value="T", output="on"),
               _save("on", "active_sensors.shp")],
              ["active_sensors.shp"]),
        _task("task_q07", QUERY, "Point", "Filter small settlements.",
              "Keep the features of cities.shp with POP at most 500 and save them.",
              {"cities.shp": lambda r: _points(r, 15)},
              [_read("cities.shp", "cities"),
               _call("filter_features", layer="cities", field="POP", comparator="<=", value="500", output="small"),
               _save("small", "small_cities.shp")],
              ["small_cities.shp"]),
        # --- Distance and Direction (7) ---------------------------------------
        _task("task_d01", DIST, "PolyLine", "Buffer the road network.",
              "Create 20-unit buffers around the features of roads.shp and save them.",
              {"roads.shp": lambda r: _open_lines(r, 5)},
              [_read("roads.shp", "roads"),
               _call("buffer", layer="roads", distance=20.0, output="corridor"),
               _save("corridor", "road_corridor.shp")],
              ["road_corridor.shp"]),
        _task("task_d02", DIST, "Point", "Concentric rings around the plant.",
              "Generate ring buffers at 50, 100 and 200 units around plant.shp and save them.",
              {"plant.shp": lambda r: _points(r, 1, span=100, fields=(NAME,))},
              [_read("plant.shp", "plant"),
               _call("multi_ring_buffer", layer="plant", distances=[50.0, 100.0, 200.0], output="rings"),
               _save("rings", "plant_rings.shp")],
              ["plant_rings.shp"]),
        _task("task_d03", DIST, "PolyLine", "Shortest connectors to the grid.",
              "Create the nearest connector from each feature of pipelines.shp to powerlines.shp and save them.",
              {"pipelines.shp": lambda r: _open_lines(r, 3, span=500),
               "powerlines.shp": lambda r: _open_lines(r, 2, span=500)},
              [_read("pipelines.shp", "pipes"), _read("powerlines.shp", "power"),
               _call("nearest_connector_lines", layer_a="pipes", layer_b="power", output="links"),
               _save("links", "links.shp")],
              ["links.shp"]),
        _task("task_d04", DIST, "Point", "Direction of the flock.",
              "Compute the distribution direction and standard distance of birds.shp and save the summary point.",
              {"birds.shp": lambda r: _points(r, 25, span=300)},
              [_read("birds.shp", "birds"),
               _call("cluster_dispersion", layer="birds", output="trend"),
               _save("trend", "trend.shp")],
              ["trend.shp"]),
        _task("task_d05", DIST, "Point", "Smallest rectangle around all stops.",
              "Create the minimum-area bounding rectangle of stops.shp and save it.",
              {"stops.shp": lambda r: _points(r, 11)},
              [_read("stops.shp", "stops"),
               _call("minimum_bounding_rectangle", layer="stops", mode="min_area", output="box"),
               _save("box", "stops_box.shp")],
              ["stops_box.shp"]),
        _task("task_d06", DIST, "Polygon", "Buffer the lakes.",
              "Create 30-unit buffers around the features of lakes.shp and save them.",
              {"lakes.shp": lambda r: _polygons(r, 3)},
              [_read("lakes.shp", "lakes"),
               _call("buffer", layer="lakes", distance=30.0, output="shore"),
               _save("shore", "shore_zone.shp")],
              ["shore_zone.shp"]),
        _task("task_d07", DIST, "Polygon", "Setback band inside the parks.",
              "Create an internal buffer of depth 15 inside each polygon of parks.shp and save it.",
              {"parks.shp": lambda r: _polygons(r, 3)},
              [_read("parks.shp", "parks"),
               _call("inward_buffer", layer="parks", distance=15.0, output="edge_band"),
               _save("edge_band", "park_edges.shp")],
              ["park_edges.shp"]),
        # --- Other (6) ----------------------------------------------------------
        _task("task_o01", OTHER, "Point", "Project to web mercator.",
              "Reproject places.shp from EPSG:4326 to EPSG:3857 and save the result.",
              {"places.shp": lambda r: _deg_points(r)},
              [_read("places.shp", "places"),
               _call("reproject_layer", layer="places", from_crs="EPSG:4326", to_crs="EPSG:3857", output="merc"),
               _save("merc", "places_3857.shp")],
              ["places_3857.shp"]),
        _task("task_o02", OTHER, "Point", "Back to geographic coordinates.",
              "Reproject sites_m.shp from EPSG:3857 to EPSG:4326 and save the result.",
              {"sites_m.shp": lambda r: _mercator_points(r)},
              [_read("sites_m.shp", "sites"),
               _call("reproject_layer", layer="sites", from_crs="EPSG:3857", to_crs="EPSG:4326", output="deg"),
               _save("deg", "sites_4326.shp")],
              ["sites_4326.shp"]),
        _task("task_o03", OTHER, "Polygon", "Rename the owner field.",
              "Rename field OWNER to HOLDER in parcels.shp and save the result.",
              {"parcels.shp": lambda r: _polygons(r, 4)},
              [_read("parcels.shp", "parcels"),
               _call("rename_field", layer="parcels", old_name="OWNER", new_name="HOLDER", output="renamed"),
               _save("renamed", "parcels_renamed.shp")],
              ["parcels_renamed.shp"]),
        _task("task_o04", OTHER, "Polygon", "Add a status field.",
              "Add a Character field STATUS with default value 'new' to parcels.shp and save the result.",
              {"parcels.shp": lambda r: _polygons(r, 3)},
              [_read("parcels.shp", "parcels"),
               _call("add_field", layer="parcels", name="STATUS", kind="Character",
                     length=8, default_value="new", output="tagged"),
               _save("tagged", "parcels_status.shp")],
              ["parcels_status.shp"]),
        _task("task_o05", OTHER, "Polygon", "Render a quick-look map.",
              "Render zones.shp and roads.shp to a PNG map.",
              {"zones.shp": lambda r: _polygons(r, 3),
               "roads.shp": lambda r: _open_lines(r, 4)},
              [_read("zones.shp", "zones"), _read("roads.shp", "roads"),
               _call("render_map_image", layers=["zones", "roads"], path="output/map.png")],
              ["map.png"]),
        _task("task_o06", OTHER, "Polygon", "Inspect and export the lakes table.",
              "Describe lakes.shp and save its attribute table as CSV.",
              {"lakes.shp": lambda r: _polygons(r, 4)},
              [_read("lakes.shp", "lakes"),
               _call("describe_shapefile", layer="lakes"),
               _call("save_table_csv", layer="lakes", path="output/lakes.csv")],
              ["lakes.csv"]),
    ]


def stage_task_inputs(task_dir, ws: Workspace) -> None:
    """Copy a task's full input/ directory into the workspace (shapefile sets
    travel with their sibling files)."""
    src = Path(task_dir) / "input"
    for p in sorted(src.rglob("*")):
        if p.is_file():
            dest = ws.resolve(f"input/{p.relative_to(src)}", for_write=True)
            shutil.copyfile(p, dest)


def replay_trace(calls, ws: Workspace, registry=None, cfg=DEFAULT_CONFIG):
    """Execute raw trace calls through the tool layer; fail fast on errors."""
    registry = registry or default_registry()
    results = []
    for c in calls:
        call = ToolCall(c["name"], dict(c["arguments"])) if isinstance(c, dict) else c
        result = invoke(call, ws, registry, cfg)
        results.append((call, result))
        if not result.ok:
            raise RuntimeError(f"ground-truth replay failed at {call.name}: {result.message}")
    return results


def build_suite(suite_dir) -> Path:
    """Materialize the full suite: inputs, specs, traces, expected outputs."""
    suite_dir = Path(suite_dir)
    suite_dir.mkdir(parents=True, exist_ok=True)
    registry = default_registry()
    task_ids = []
    for spec in task_definitions():
        tid = spec["task_id"]
        task_ids.append(tid)
        rng = _rng(tid)
        tdir = suite_dir / tid
        (tdir / "input").mkdir(parents=True, exist_ok=True)
        for fname, builder in spec["inputs"].items():
            write_dataset(builder(rng), tdir / "input" / fname)

        task = TaskSpec(
            task_id=tid,
            geometry_type=spec["geometry_type"],
            category=spec["category"],
            description=spec["description"],
            input_paths=tuple(f"input/{n}" for n in spec["inputs"]),
            output_paths=tuple(spec["outputs"]),
            user_prompt=spec["user_prompt"],
        )
        trace = GroundTruthTrace(
            tid, tuple(ToolCall(c["name"], dict(c["arguments"])) for c in spec["calls"])
        )
        (tdir / "task.json").write_text(
            json.dumps(task_to_dict(task), indent=2) + "\n", encoding="utf-8"
        )
        (tdir / "trace.json").write_text(
            json.dumps(trace_to_dict(trace), indent=2) + "\n", encoding="utf-8"
        )

        # expected outputs = ground-truth replay
        with tempfile.TemporaryDirectory() as td:
            ws = Workspace(td)
            stage_task_inputs(tdir, ws)
            replay_trace(spec["calls"], ws, registry)
            for rel in task.output_paths:
                produced = ws.resolve(rel)
                dest = tdir / "expected" / rel
                dest.parent.mkdir(parents=True, exist_ok=True)
                if produced.suffix == ".shp":
                    for ext in (".shp", ".shx", ".dbf", ".prj"):
                        side = produced.with_suffix(ext)
                        if side.exists():
                            shutil.copyfile(side, dest.with_suffix(ext))
                else:
                    shutil.copyfile(produced, dest)

    (suite_dir / "manifest.json").write_text(
        json.dumps({"tasks": task_ids}, indent=2) + "\n", encoding="utf-8"
    )
    return suite_dir
