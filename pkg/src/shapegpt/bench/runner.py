"""Suite execution: trace replay and full agent sessions over benchmark tasks."""

from __future__ import annotations

import tempfile
from pathlib import Path
from typing import Callable, Optional

from ..agents.chat import ScriptedClient, assistant_calls, assistant_text
from ..agents.session import SessionConfig, run_session
from ..geom import DEFAULT_CONFIG
from ..tools import Registry, ToolCall, Workspace, default_registry, invoke, validate_call
from .grading import grade_output
from .metrics import TaskOutcome
from .suite import GroundTruthTrace, TaskSpec, load_task_suite
from .synth import stage_task_inputs


class TraceReplayRunner:
    """Executes the ground-truth trace directly through the tool layer."""

    def __init__(self, registry: Optional[Registry] = None, cfg=DEFAULT_CONFIG):
        self.registry = registry or default_registry()
        self.cfg = cfg

    def __call__(self, task: TaskSpec, trace: GroundTruthTrace, ws: Workspace):
        calls = []
        for call in trace.calls:
            verdict = validate_call(call, self.registry)
            if verdict.is_valid:
                result = invoke(call, ws, self.registry, self.cfg)
                status = result.status
            else:
                status = "error"
            calls.append((call, str(verdict), status))
        return calls


class DuplicateCallRunner(TraceReplayRunner):
    """Replay that re-issues the first call once (repetition-metric probe)."""

    def __call__(self, task, trace, ws):
        calls = super().__call__(task, trace, ws)
        if trace.calls:
            call = trace.calls[0]
            verdict = validate_call(call, self.registry)
            result = invoke(call, ws, self.registry, self.cfg)
            calls.append((call, str(verdict), result.status))
        return calls


class FailingRunner:
    """Always emits one unknown-tool call; every task fails (metric probe)."""

    def __init__(self, registry: Optional[Registry] = None):
        self.registry = registry or default_registry()

    def __call__(self, task, trace, ws):
        call = ToolCall("no_such_tool", {})
        return [(call, str(validate_call(call, self.registry)), "error")]


def scripted_clients_for_trace(
    task: TaskSpec, trace: GroundTruthTrace, fault_first_call: bool = False
) -> tuple[ScriptedClient, ScriptedClient]:
    """Planner/worker scripts that execute a task's ground-truth trace.

    With fault injection, the first call is first issued with its required
    arguments stripped (a validation error the worker then corrects), which
    makes the error-then-corrected-call pathway observable in session logs.
    """
    planner = ScriptedClient([
        assistant_text('{"subtask": ' + _json_text(f"Execute the task: {task.user_prompt}") + "}"),
        assistant_text('{"finish": "task executed"}'),
    ])
    worker_turns = []
    for i, call in enumerate(trace.calls):
        if fault_first_call and i == 0:
            worker_turns.append(assistant_calls(_corrupt(call), prefix=f"bad{i}"))
        worker_turns.append(assistant_calls(call, prefix=f"c{i}"))
    worker_turns.append(assistant_text("All steps of the subtask are complete."))
    return planner, ScriptedClient(worker_turns)


def _json_text(s: str) -> str:
    import json

    return json.dumps(s)


def _corrupt(call: ToolCall) -> ToolCall:
    """A guaranteed-invalid variant of a call (missing/unknown parameter)."""
    if call.arguments:
        args = dict(call.arguments)
        args.pop(next(iter(args)))
        if args == call.arguments:
            args["__bogus__"] = 1
        return ToolCall(call.name, args)
    return ToolCall(call.name, {"__bogus__": 1})


class SessionRunner:
    """Runs each task as a planner/worker session with per-task clients."""

    def __init__(
        self,
        client_factory: Callable[[TaskSpec, GroundTruthTrace], tuple],
        planner_enabled: bool = True,
        max_planner_iterations: int = 20,
        max_worker_calls_per_subtask: int = 16,
        registry: Optional[Registry] = None,
    ):
        self.client_factory = client_factory
        self.planner_enabled = planner_enabled
        self.max_planner_iterations = max_planner_iterations
        self.max_worker_calls = max_worker_calls_per_subtask
        self.registry = registry or default_registry()
        self.outcomes_meta: dict[str, dict] = {}

    def __call__(self, task: TaskSpec, trace: GroundTruthTrace, ws: Workspace):
        planner, worker = self.client_factory(task, trace)
        cfg = SessionConfig(
            planner_client=planner,
            worker_client=worker,
            planner_enabled=self.planner_enabled,
            max_planner_iterations=self.max_planner_iterations,
            max_worker_calls_per_subtask=self.max_worker_calls,
            registry=self.registry,
        )
        outcome = run_session(task.user_prompt, [], cfg, ws.sandbox_dir, workspace=ws)
        self.outcomes_meta[task.task_id] = {
            "events": outcome.events,
            "session_success": outcome.success,
            "had_exception": outcome.had_exception,
        }
        calls = []
        for report in outcome.reports:
            for call, verdict, result in report.calls:
                calls.append((call, str(verdict), result.status))
        return calls


def run_suite(
    suite_dir,
    runner,
    work_dir=None,
    registry: Optional[Registry] = None,
) -> tuple[list[TaskOutcome], list[GroundTruthTrace]]:
    """Run every task in a fresh workspace and grade its declared outputs."""
    suite_dir = Path(suite_dir)
    suite = load_task_suite(suite_dir, registry)
    outcomes: list[TaskOutcome] = []
    traces: list[GroundTruthTrace] = []
    own_tmp = None
    if work_dir is None:
        own_tmp = tempfile.TemporaryDirectory(prefix="shapegpt-bench-")
        work_dir = own_tmp.name
    work_dir = Path(work_dir)
    try:
        for task, trace in suite:
            traces.append(trace)
            tdir = suite_dir / task.task_id
            ws = Workspace(work_dir / task.task_id)
            stage_task_inputs(tdir, ws)
            failure = None
            calls = []
            try:
                calls = runner(task, trace, ws)
            except Exception as e:  # runner bugs are task failures, not aborts
                failure = f"runner crashed: {e!r}"
            produced = []
            graded_ok = True
            if failure is None:
                for rel in task.output_paths:
                    expected = tdir / "expected" / rel
                    actual = ws.sandbox_dir / rel
                    grade = grade_output(expected, actual)
                    if actual.exists():
                        produced.append(rel)
                    if not grade:
                        graded_ok = False
                        failure = f"{rel}: {grade.reason}"
            had_exception = any(
                verdict != "valid" or status != "ok" for _, verdict, status in calls
            )
            meta = getattr(runner, "outcomes_meta", {}).get(task.task_id)
            if meta and meta.get("had_exception"):
                had_exception = True
            outcomes.append(
                TaskOutcome(
                    task_id=task.task_id,
                    category=task.category,
                    produced_outputs=tuple(produced),
                    success=failure is None and graded_ok,
                    had_exception=had_exception,
                    calls=tuple(calls),
                    failure_reason=failure,
                )
            )
    finally:
        if own_tmp is not None:
            own_tmp.cleanup()
    return outcomes, traces
