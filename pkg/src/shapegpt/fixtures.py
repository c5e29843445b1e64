"""Deterministic demo fixture: point allocation by Voronoi cells and buffers.

Used by the scripted service mode, the test suites, and the CLI demo: five
facility points, a canned planner script that decomposes the goal into three
steps (tessellate, buffer 500, clip), and a canned worker script that executes
them through the registered tools.
"""

from __future__ import annotations

import zipfile
from pathlib import Path

from .agents.chat import ScriptedClient, assistant_calls, assistant_text
from .io import write_dataset
from .model import Dataset, Feature, FieldDescriptor, FieldKind, Point, ShapeKind
from .tools.schema import ToolCall

CASE1_PROMPT = (
    "Allocate space around the facility points: generate Voronoi polygons, "
    "create a 500-meter buffer around the points, and clip the buffer with "
    "the Voronoi polygons. Save the result to output/allocated.shp."
)
CASE1_OUTPUT = "output/allocated.shp"
CASE1_FEATURE_COUNT = 5


def case1_dataset() -> Dataset:
    pts = [(0.0, 0.0), (800.0, 0.0), (0.0, 800.0), (800.0, 800.0), (400.0, 400.0)]
    name = FieldDescriptor("NAME", FieldKind.CHARACTER, 10)
    feats = [Feature(Point(x, y), {"NAME": f"fac_{i}"}) for i, (x, y) in enumerate(pts, 1)]
    return Dataset.build(ShapeKind.POINT, feats, [name])


def case1_calls() -> list[list[ToolCall]]:
    """Worker tool calls per subtask (the ground-truth trace, grouped)."""
    return [
        [
            ToolCall("read_shapefile", {"path": "input/facilities.shp", "alias": "facilities"}),
            ToolCall("voronoi_points", {"layer": "facilities", "output": "voronoi"}),
        ],
        [
            ToolCall("buffer", {"layer": "facilities", "distance": 500, "output": "buffers"}),
        ],
        [
            ToolCall("clip", {"layer": "buffers", "boundary_layer": "voronoi", "output": "allocated"}),
            ToolCall("save_shapefile", {"layer": "allocated", "path": CASE1_OUTPUT}),
        ],
    ]


def case1_scripts() -> tuple[ScriptedClient, ScriptedClient]:
    """(planner, worker) scripted clients for the three-step decomposition."""
    planner = ScriptedClient([
        assistant_text('{"subtask": "Generate Voronoi polygons from the facility points"}'),
        assistant_text('{"subtask": "Create a 500-meter buffer around the facility points"}'),
        assistant_text('{"subtask": "Clip the buffers using the Voronoi polygons and save the result"}'),
        assistant_text('{"finish": "Voronoi allocation complete; result saved to output/allocated.shp"}'),
    ])
    groups = case1_calls()
    worker = ScriptedClient([
        assistant_calls(*groups[0], prefix="s1"),
        assistant_text("Voronoi polygons created from the facility points."),
        assistant_calls(*groups[1], prefix="s2"),
        assistant_text("500-meter buffers created."),
        assistant_calls(*groups[2], prefix="s3"),
        assistant_text("Buffers clipped by Voronoi cells and saved."),
    ])
    return planner, worker


def write_case1_inputs(dir_path) -> Path:
    """Write the facilities shapefile set; returns the .shp path."""
    dir_path = Path(dir_path)
    dir_path.mkdir(parents=True, exist_ok=True)
    shp = dir_path / "facilities.shp"
    write_dataset(case1_dataset(), shp)
    return shp


def write_case1_zip(zip_path) -> Path:
    """Zip of the fixture shapefile set (what a user would upload)."""
    zip_path = Path(zip_path)
    zip_path.parent.mkdir(parents=True, exist_ok=True)
    import tempfile

    with tempfile.TemporaryDirectory() as td:
        shp = write_case1_inputs(td)
        with zipfile.ZipFile(zip_path, "w", zipfile.ZIP_STORED) as zf:
            for ext in (".shp", ".shx", ".dbf"):
                p = shp.with_suffix(ext)
                zf.write(p, p.name)
    return zip_path


def case1_expected_outputs(work_dir) -> Path:
    """Replay the ground-truth calls directly through the tool layer.

    Returns the produced .shp path; this is the grading oracle for the
    scripted session's artifact.
    """
    from .tools import Workspace, default_registry, invoke

    ws = Workspace(work_dir)
    write_case1_inputs(ws.resolve("input", for_write=True))
    registry = default_registry()
    for group in case1_calls():
        for call in group:
            result = invoke(call, ws, registry)
            if not result.ok:
                raise RuntimeError(f"fixture replay failed at {call.name}: {result.message}")
    return ws.resolve(CASE1_OUTPUT)
