"""Benchmark harness: task suite, graders, metrics, runners."""

from .grading import GradeResult, grade_output
from .metrics import MetricsReport, TaskOutcome, compute_metrics
from .runner import (
    DuplicateCallRunner,
    FailingRunner,
    SessionRunner,
    TraceReplayRunner,
    run_suite,
    scripted_clients_for_trace,
)
from .suite import (
    CATEGORIES,
    GroundTruthTrace,
    TaskSpec,
    category_counts,
    load_task_suite,
)
from .synth import build_suite, replay_trace, stage_task_inputs, task_definitions

__all__ = [
    "CATEGORIES",
    "DuplicateCallRunner",
    "FailingRunner",
    "GradeResult",
    "GroundTruthTrace",
    "MetricsReport",
    "SessionRunner",
    "TaskOutcome",
    "TaskSpec",
    "TraceReplayRunner",
    "build_suite",
    "category_counts",
    "compute_metrics",
    "grade_output",
    "load_task_suite",
    "replay_trace",
    "run_suite",
    "scripted_clients_for_trace",
    "stage_task_inputs",
    "task_definitions",
]
