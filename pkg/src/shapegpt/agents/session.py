"""Session driver: planner/worker orchestration with an append-only event log.

Events carry monotonic sequence numbers and no wall-clock data, so identical
scripts over identical fixtures produce byte-identical logs.
"""

from __future__ import annotations

import json
import shutil
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

from ..geom import DEFAULT_CONFIG, GeometryConfig
from ..tools import Registry, ToolCall, default_registry
from ..tools.workspace import Workspace
from .planner import PlannerState, Subtask, planner_step
from .worker import WorkerReport, worker_step


@dataclass
class SessionConfig:
    planner_client: Any = None
    worker_client: Any = None
    max_planner_iterations: int = 20
    max_worker_calls_per_subtask: int = 10
    planner_enabled: bool = True
    task_example: bool = True   # few-shot dialog in the worker system prompt
    api_example: bool = True    # per-tool examples in the injected docs
    geometry: GeometryConfig = DEFAULT_CONFIG
    registry: Optional[Registry] = None

    def __post_init__(self):
        if self.max_planner_iterations < 1 or self.max_worker_calls_per_subtask < 1:
            raise ValueError("iteration limits must be >= 1")


@dataclass
class SessionOutcome:
    success: bool
    summary: str
    artifacts: list[str]
    events: list[dict]
    reports: list[WorkerReport]
    workspace: Workspace
    had_exception: bool = False

    def events_json(self) -> str:
        return "\n".join(json.dumps(e, sort_keys=True) for e in self.events)


class _EventLog:
    def __init__(self, on_event: Optional[Callable[[dict], None]]):
        self.events: list[dict] = []
        self._on_event = on_event

    def emit(self, event: dict) -> dict:
        event = {"seq": len(self.events) + 1, **event}
        self.events.append(event)
        if self._on_event:
            self._on_event(event)
        return event


def stage_inputs(ws: Workspace, input_paths) -> list[str]:
    """Copy input files into the workspace's input/ area."""
    staged = []
    for src in input_paths:
        src = Path(src)
        dest = ws.resolve(f"input/{src.name}", for_write=True)
        shutil.copyfile(src, dest)
        staged.append(f"input/{src.name}")
    return staged


def run_session(
    goal: str,
    input_paths,
    cfg: SessionConfig,
    sandbox_dir,
    on_event: Optional[Callable[[dict], None]] = None,
    workspace: Optional[Workspace] = None,
) -> SessionOutcome:
    """Drive the planner/worker loop to completion. Never raises: catastrophic
    client failure yields a failed outcome with the log so far."""
    log = _EventLog(on_event)
    ws = workspace or Workspace(sandbox_dir)
    registry = cfg.registry or default_registry()
    staged = stage_inputs(ws, input_paths)
    log.emit({
        "type": "session_start",
        "goal": goal,
        "planner_enabled": cfg.planner_enabled,
        "inputs": staged,
    })
    state = PlannerState(user_goal=goal)
    reports: list[WorkerReport] = []
    summary = ""
    finished_cleanly = False
    had_exception = False

    def run_subtask(sub: Subtask) -> WorkerReport:
        log.emit({"type": "subtask", "id": sub.id, "instruction": sub.instruction})
        report = worker_step(sub, ws, registry, cfg, on_event=log.emit)
        log.emit({
            "type": "subtask_report",
            "id": sub.id,
            "success": report.success,
            "summary": report.summary,
        })
        return report

    try:
        if not cfg.planner_enabled:
            sub = Subtask(1, goal)
            report = run_subtask(sub)
            reports.append(report)
            summary = report.summary
            finished_cleanly = True
        else:
            while not state.done:
                decision = planner_step(state, cfg)
                if decision.malformed:
                    had_exception = True
                if decision.kind == "finish":
                    summary = decision.summary or ""
                    log.emit({
                        "type": "planner_finish",
                        "summary": summary,
                        "forced": decision.forced,
                    })
                    finished_cleanly = not decision.forced
                    break
                report = run_subtask(decision.subtask)
                state.memory.append((decision.subtask, report))
                reports.append(report)
    except Exception as e:  # catastrophic client failure
        summary = f"session aborted: {e!r}"
        had_exception = True

    for report in reports:
        for _, verdict, result in report.calls:
            if not verdict.is_valid or not result.ok:
                had_exception = True
    if any(e.get("type") == "worker_exception" for e in log.events):
        had_exception = True

    success = finished_cleanly and bool(reports) and all(r.success for r in reports)
    log.emit({"type": "session_end", "success": success, "summary": summary})
    return SessionOutcome(
        success=success,
        summary=summary,
        artifacts=list(ws.artifacts),
        events=log.events,
        reports=reports,
        workspace=ws,
        had_exception=had_exception,
    )


def _normalize(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    if isinstance(value, dict):
        return {k: _normalize(v) for k, v in sorted(value.items())}
    return value


def canonical_call_key(call: ToolCall) -> str:
    return json.dumps({"name": call.name, "arguments": _normalize(call.arguments)}, sort_keys=True)


def count_repeated_calls(calls) -> int:
    """Calls whose (name, canonicalized arguments) repeat an earlier call."""
    seen: set[str] = set()
    repeats = 0
    for call in calls:
        key = canonical_call_key(call)
        if key in seen:
            repeats += 1
        else:
            seen.add(key)
    return repeats
