"""Benchmark task schema and on-disk suite loading."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import MalformedTask, TraceValidationFailure
from ..tools import Registry, ToolCall, default_registry, validate_call

CATEGORIES = (
    "Geometric Operations",
    "Queries and Computations",
    "Distance and Direction",
    "Other",
)


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    geometry_type: str
    category: str
    description: str
    input_paths: tuple[str, ...]
    output_paths: tuple[str, ...]
    user_prompt: str

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise MalformedTask(f"{self.task_id}: unknown category {self.category!r}")


@dataclass(frozen=True)
class GroundTruthTrace:
    task_id: str
    calls: tuple[ToolCall, ...]


def task_to_dict(t: TaskSpec) -> dict:
    return {
        "task_id": t.task_id,
        "geometry_type": t.geometry_type,
        "category": t.category,
        "description": t.description,
        "input_paths": list(t.input_paths),
        "output_paths": list(t.output_paths),
        "user_prompt": t.user_prompt,
    }


def trace_to_dict(tr: GroundTruthTrace) -> dict:
    return {
        "task_id": tr.task_id,
        "calls": [{"name": c.name, "arguments": c.arguments} for c in tr.calls],
    }


def _task_from_dict(d: dict) -> TaskSpec:
    try:
        return TaskSpec(
            task_id=d["task_id"],
            geometry_type=d["geometry_type"],
            category=d["category"],
            description=d["description"],
            input_paths=tuple(d["input_paths"]),
            output_paths=tuple(d["output_paths"]),
            user_prompt=d["user_prompt"],
        )
    except KeyError as e:
        raise MalformedTask(f"task record missing field {e}")


def _trace_from_dict(d: dict) -> GroundTruthTrace:
    try:
        calls = tuple(ToolCall(c["name"], dict(c.get("arguments", {}))) for c in d["calls"])
        return GroundTruthTrace(d["task_id"], calls)
    except (KeyError, TypeError) as e:
        raise MalformedTask(f"trace record malformed: {e}")


def load_task_suite(
    suite_dir, registry: Registry | None = None
) -> list[tuple[TaskSpec, GroundTruthTrace]]:
    """Parse the manifest, every task spec, and every trace; validate traces."""
    suite_dir = Path(suite_dir)
    registry = registry or default_registry()
    manifest_path = suite_dir / "manifest.json"
    if not manifest_path.exists():
        raise MalformedTask(f"no manifest.json in {suite_dir}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    task_dirs = manifest.get("tasks")
    if not task_dirs:
        raise MalformedTask("manifest lists no tasks")
    out = []
    for name in task_dirs:
        tdir = suite_dir / name
        try:
            task = _task_from_dict(json.loads((tdir / "task.json").read_text(encoding="utf-8")))
            trace = _trace_from_dict(json.loads((tdir / "trace.json").read_text(encoding="utf-8")))
        except FileNotFoundError as e:
            raise MalformedTask(f"{name}: {e}")
        except json.JSONDecodeError as e:
            raise MalformedTask(f"{name}: {e}")
        for rel in task.input_paths:
            if not (tdir / rel).exists():
                raise MalformedTask(f"{task.task_id}: missing input {rel}")
        for call in trace.calls:
            verdict = validate_call(call, registry)
            if not verdict.is_valid:
                raise TraceValidationFailure(f"{task.task_id}: {call.name} -> {verdict}")
        out.append((task, trace))
    return out


def category_counts(suite) -> dict[str, int]:
    counts: dict[str, int] = {c: 0 for c in CATEGORIES}
    for task, _ in suite:
        counts[task.category] += 1
    return counts
