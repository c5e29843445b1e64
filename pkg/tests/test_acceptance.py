"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import io
import json
import math
import random
import threading
import time
import urllib.request
import zipfile

import pytest

from shapegpt.io import read_dataset, write_dataset
from shapegpt.model import Point, PolyLine, Polygon

PASS_LINES = []


def report(criterion: str, detail: str = ""):
    line = f"ACCEPTANCE {criterion}: PASS" + (f" ({detail})" if detail else "")
    PASS_LINES.append(line)
    print("\n" + line)


def teardown_module(module):
    print("\n" + "\n".join(PASS_LINES))


# --- criterion 1: format round-trip ------------------------------------------


def test_criterion_1_format_roundtrip(tmp_path):
    from test_shapefile_io import assert_roundtrip_equal, random_dataset

    start = time.time()
    for seed in range(100):
        rng = random.Random(10_000 + seed)
        d = random_dataset(rng)
        path = tmp_path / f"rt{seed}.shp"
        write_dataset(d, path)
        raw = path.read_bytes()
        assert raw[0:4] == (9994).to_bytes(4, "big")
        assert (tmp_path / f"rt{seed}.dbf").read_bytes()[0] == 0x03
        back = read_dataset(path)
        assert_roundtrip_equal(d, back)
    elapsed = time.time() - start
    assert elapsed < 10.0, f"round-trip suite took {elapsed:.1f}s"
    report("1 format round-trip", f"100 datasets in {elapsed:.1f}s")


# --- criterion 2: geometry oracle suite ---------------------------------------


def _square(x0, y0, s):
    return Polygon((((x0, y0), (x0, y0 + s), (x0 + s, y0 + s), (x0 + s, y0), (x0, y0)),))


def _star(rng, cx, cy, rmax, n):
    ring = []
    for i in range(n):
        a = 2 * math.pi * (i + rng.uniform(0.0, 0.9)) / n
        r = rng.uniform(0.3, 1.0) * rmax
        ring.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    ring.append(ring[0])
    ring.reverse()
    return Polygon((tuple(ring),))


def test_criterion_2_geometry_oracles():
    from shapegpt import geom
    from shapegpt.geom import GeometryConfig

    start = time.time()

    # headline [TRIVIAL] examples
    assert geom.polyline_length(PolyLine((((0, 0), (3, 4)),))) == 5.0
    assert geom.polyline_length(_square(0, 0, 1)) == 4.0
    assert geom.polygon_area(_square(0, 0, 1)) == 1.0
    hole = tuple(reversed(_square(0.25, 0.25, 0.5).rings[0]))
    assert geom.polygon_area(Polygon((_square(0, 0, 1).rings[0], hole))) == 0.75
    assert geom.polygon_area(
        geom.boolean_op("intersection", _square(0, 0, 1), _square(0.5, 0.5, 1), 1e-9)
    ) == pytest.approx(0.25, abs=1e-12)
    assert geom.polygon_area(
        geom.boolean_op("union", _square(0, 0, 1), _square(0, 0, 1), 1e-9)
    ) == pytest.approx(1.0, rel=1e-12)
    assert len(geom.vertices_to_points(_square(0, 0, 1))) == 4
    x, _ = geom.reproject((180.0, 0.0), "EPSG:4326", "EPSG:3857")
    assert x == pytest.approx(20037508.342789244, abs=1e-6)
    stats = geom.dispersion_stats([(1, 0), (-1, 0), (0, 2), (0, -2)])
    assert stats.orientation_deg == pytest.approx(90.0)
    assert stats.standard_distance == pytest.approx(math.sqrt(2.5), rel=1e-12)

    # buffer disc convergence: 1% at 8 seg/quadrant, 0.05% at 32
    for k, tol in ((8, 0.01), (32, 0.0005)):
        disc = geom.buffer(Point(0, 0), 1.0, GeometryConfig(arc_segments_per_quadrant=k))
        assert abs(geom.polygon_area(disc) - math.pi) / math.pi < tol

    # overlay conservation over 200 random polygon pairs at 1e-9 relative
    rng = random.Random(20_000)
    for _ in range(200):
        a = _star(rng, rng.uniform(-1, 1), rng.uniform(-1, 1), 2.0, rng.randint(4, 9))
        b = _star(rng, rng.uniform(-1, 1), rng.uniform(-1, 1), 2.0, rng.randint(4, 9))
        inter = geom.polygon_area(geom.boolean_op("intersection", a, b, 1e-9))
        diff = geom.polygon_area(geom.boolean_op("difference", a, b, 1e-9))
        total = geom.polygon_area(a)
        assert abs(inter + diff - total) <= 1e-9 * max(total, 1.0)

    # voronoi tiling + Monte-Carlo nearest-seed membership, 50 seeds
    seeds = [(rng.uniform(0, 10), rng.uniform(0, 10)) for _ in range(50)]
    cells = geom.voronoi_points(seeds, (0, 0, 10, 10), GeometryConfig())
    x0, y0, x1, y1 = geom.expand_bbox((0, 0, 10, 10), 0.10)
    total = sum(geom.polygon_area(p) for p, _ in cells)
    assert abs(total - (x1 - x0) * (y1 - y0)) / ((x1 - x0) * (y1 - y0)) < 1e-6
    by_idx = {i: p for p, i in cells}
    for _ in range(1000):
        px, py = rng.uniform(0, 10), rng.uniform(0, 10)
        dists = sorted((math.hypot(px - sx, py - sy), i) for i, (sx, sy) in enumerate(seeds))
        if dists[1][0] - dists[0][0] < 1e-7:
            continue
        assert geom.point_in_polygon(px, py, by_idx[dists[0][1]], 1e-7)

    # split conservation at 1e-9 relative
    for _ in range(20):
        poly = _star(rng, 0, 0, 3.0, rng.randint(5, 9))
        blades = [
            PolyLine(((
                (rng.uniform(-4, 4), rng.uniform(-4, 4)),
                (rng.uniform(-4, 4), rng.uniform(-4, 4)),
            ),))
            for _ in range(rng.randint(1, 3))
        ]
        pieces = geom.split_polygon_by_lines(poly, blades)
        total = sum(geom.polygon_area(p) for p in pieces)
        want = geom.polygon_area(poly)
        assert abs(total - want) <= 1e-9 * max(want, 1.0)

    elapsed = time.time() - start
    assert elapsed < 60.0, f"geometry oracle suite took {elapsed:.1f}s"
    report("2 geometry oracle suite", f"{elapsed:.1f}s")


# --- criterion 3: registry coherence ------------------------------------------


def test_criterion_3_registry_coherence(tmp_path):
    from shapegpt.tools import default_registry, export_schemas, load_registry

    registry = default_registry()  # cross-validates YAML vs JSON internally
    assert len(registry) == 27
    (tmp_path / "e.yaml").write_text(export_schemas(registry, "yaml-style"))
    (tmp_path / "e.json").write_text(export_schemas(registry, "json-style"))
    assert load_registry(tmp_path) == registry
    report("3 registry coherence", "27 tools, export/load identity")


# --- criterion 4: ground-truth replay -----------------------------------------


def test_criterion_4_ground_truth_replay(suite_dir):
    from shapegpt.bench import TraceReplayRunner, category_counts, compute_metrics, load_task_suite, run_suite

    suite = load_task_suite(suite_dir)
    counts = category_counts(suite)
    assert len(suite) == 42 and counts == {
        "Geometric Operations": 22,
        "Queries and Computations": 7,
        "Distance and Direction": 7,
        "Other": 6,
    }
    outcomes, traces = run_suite(suite_dir, TraceReplayRunner())
    report_m = compute_metrics(outcomes, traces)
    failures = [o for o in outcomes if not o.success]
    assert not failures, f"failed: {[(o.task_id, o.failure_reason) for o in failures]}"
    assert report_m.success_rate == 1.0
    assert report_m.accuracy == 1.0
    assert report_m.parameter_accuracy == 1.0
    assert report_m.repetition_rate == 0.0
    report("4 ground-truth replay", "42 tasks, 100/100/100/0")


# --- criterion 5: metric arithmetic --------------------------------------------


def test_criterion_5_metrics_reproduce_reported_arithmetic():
    from shapegpt.bench import GroundTruthTrace, TaskOutcome, compute_metrics
    from shapegpt.tools import ToolCall

    def outcome(tid, success, exc):
        return TaskOutcome(tid, "Other", (), success, exc)

    outcomes = (
        [outcome(f"t{i}", True, False) for i in range(39)]
        + [outcome("t39", True, True)]
        + [outcome("t40", False, True), outcome("t41", False, True)]
    )
    traces = [GroundTruthTrace(o.task_id, (ToolCall("x", {}),)) for o in outcomes]
    m = compute_metrics(outcomes, traces)
    assert abs(m.success_rate * 100 - 95.24) < 0.01
    assert abs(m.accuracy * 100 - 92.86) < 0.01

    weak = (
        [outcome(f"t{i}", True, False) for i in range(3)]
        + [outcome(f"t{i}", True, True) for i in range(3, 10)]
        + [outcome(f"t{i}", False, True) for i in range(10, 42)]
    )
    traces_w = [GroundTruthTrace(o.task_id, (ToolCall("x", {}),)) for o in weak]
    mw = compute_metrics(weak, traces_w)
    assert abs(mw.accuracy * 100 - 7.14) < 0.01
    assert abs(mw.success_rate * 100 - 23.81) < 0.01
    assert mw.accuracy <= mw.success_rate
    report("5 metric arithmetic", "95.24/92.86 and 23.81/7.14 reproduced")


# --- criterion 6: planner retry property ----------------------------------------


def test_criterion_6_planner_retry_property(suite_dir):
    from shapegpt.bench import SessionRunner, compute_metrics, run_suite
    from shapegpt.bench.runner import scripted_clients_for_trace

    start = time.time()
    enabled_runner = SessionRunner(
        lambda task, trace: scripted_clients_for_trace(task, trace, fault_first_call=True),
        planner_enabled=True,
    )
    outcomes_e, traces = run_suite(suite_dir, enabled_runner)
    assert all(o.success for o in outcomes_e), [
        (o.task_id, o.failure_reason) for o in outcomes_e if not o.success
    ]
    # every event log shows an error followed by a corrected, succeeding call
    for task_id, meta in enabled_runner.outcomes_meta.items():
        results = [e for e in meta["events"] if e.get("type") == "tool_result"]
        error_at = next(
            (i for i, e in enumerate(results) if e["status"] == "error"), None
        )
        assert error_at is not None, f"{task_id}: no injected fault in log"
        failed_tool = results[error_at]["name"]
        assert any(
            e["status"] == "ok" and e["name"] == failed_tool
            for e in results[error_at + 1 :]
        ), f"{task_id}: no corrected call after the fault"

    disabled_runner = SessionRunner(
        lambda task, trace: scripted_clients_for_trace(task, trace, fault_first_call=True),
        planner_enabled=False,
    )
    outcomes_d, _ = run_suite(suite_dir, disabled_runner)
    assert sum(o.success for o in outcomes_d) <= sum(o.success for o in outcomes_e)
    elapsed = time.time() - start
    assert elapsed < 120.0, f"retry property run took {elapsed:.1f}s"
    report("6 planner retry property", f"42+42 sessions in {elapsed:.1f}s")


# --- criterion 7: session termination --------------------------------------------


def test_criterion_7_session_termination(tmp_path):
    from shapegpt.agents import ScriptedClient, SessionConfig, assistant_calls, assistant_text, run_session
    from shapegpt.tools import ToolCall, default_registry

    registry = default_registry()
    iters, wcap = 3, 2
    bound = iters * (wcap + 1)
    worst = 0
    for seed in range(1000):
        rng = random.Random(seed)

        def chaos(turns, tools):
            roll = rng.random()
            if roll < 0.35:
                return assistant_text('{"subtask": "keep going"}')
            if roll < 0.55:
                return assistant_text("???" * rng.randint(1, 3))
            if roll < 0.8:
                return assistant_calls(ToolCall("explode", {"n": rng.random()}))
            return assistant_calls(ToolCall("buffer", {"layer": "ghost", "distance": rng.random()}))

        planner = ScriptedClient(chaos)
        worker = ScriptedClient(chaos)
        cfg = SessionConfig(
            planner_client=planner,
            worker_client=worker,
            max_planner_iterations=iters,
            max_worker_calls_per_subtask=wcap,
            registry=registry,
        )
        run_session("fuzz", [], cfg, tmp_path / f"f{seed}")
        exchanges = planner.exchanges + worker.exchanges
        worst = max(worst, exchanges)
        assert exchanges <= bound, f"seed {seed}: {exchanges} exchanges > bound {bound}"
    report("7 session termination", f"1000 fuzzed scripts, worst {worst} <= bound {bound}")


# --- criterion 8: service contract ------------------------------------------------


def test_criterion_8_service_contract(tmp_path):
    from shapegpt.bench import grade_output
    from shapegpt.fixtures import (
        CASE1_OUTPUT,
        CASE1_PROMPT,
        case1_expected_outputs,
        case1_scripts,
        write_case1_zip,
    )
    from shapegpt.service.app import make_server

    server = make_server(tmp_path / "svc", case1_scripts, port=0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        host, port = server.server_address[:2]
        base = f"http://{host}:{port}"
        zip_path = write_case1_zip(tmp_path / "upload.zip")
        req = urllib.request.Request(
            f"{base}/sessions", data=zip_path.read_bytes(),
            headers={"Content-Type": "application/zip"},
        )
        with urllib.request.urlopen(req, timeout=30) as resp:
            session = json.loads(resp.read().decode())
        sid = session["id"]
        req = urllib.request.Request(
            f"{base}/sessions/{sid}/task",
            data=json.dumps({"prompt": CASE1_PROMPT}).encode(),
            headers={"Content-Type": "application/json"},
        )
        with urllib.request.urlopen(req, timeout=30) as resp:
            assert resp.status == 202

        events = []
        with urllib.request.urlopen(f"{base}/sessions/{sid}/events", timeout=60) as resp:
            for raw in resp:
                line = raw.decode().rstrip("\n")
                if line.startswith("event: end"):
                    break
                if line.startswith("data: "):
                    events.append(json.loads(line[6:]))

        session_obj = server.store.get(sid)
        stream_text = "\n".join(json.dumps(e, sort_keys=True) for e in events)
        log_text = "\n".join(json.dumps(e, sort_keys=True) for e in session_obj.events)
        assert stream_text == log_text  # byte-identical stream vs log

        with urllib.request.urlopen(
            f"{base}/sessions/{sid}/artifacts/{CASE1_OUTPUT}", timeout=30
        ) as resp:
            blob = resp.read()
        out_dir = tmp_path / "fetched"
        out_dir.mkdir()
        with zipfile.ZipFile(io.BytesIO(blob)) as zf:
            zf.extractall(out_dir)
        expected = case1_expected_outputs(tmp_path / "oracle")
        grade = grade_output(expected, out_dir / "allocated.shp")
        assert grade, grade.reason
    finally:
        server.shutdown()
        server.server_close()
    report("8 service contract", "stream == log; artifact graded equal")
