"""Evaluation metrics: accuracy, success rate, parameter accuracy, repetition."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from ..agents.session import count_repeated_calls
from .suite import CATEGORIES, GroundTruthTrace


@dataclass(frozen=True)
class TaskOutcome:
    task_id: str
    category: str
    produced_outputs: tuple[str, ...]
    success: bool
    had_exception: bool
    calls: tuple = ()  # (ToolCall, verdict_kind: str, status: str)
    failure_reason: Optional[str] = None


@dataclass(frozen=True)
class MetricsReport:
    task_count: int
    accuracy: float          # fraction of exception-free successes
    success_rate: float      # fraction of successes
    parameter_accuracy: float
    repetition_rate: float
    by_category: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "task_count": self.task_count,
                "accuracy": self.accuracy,
                "success_rate": self.success_rate,
                "parameter_accuracy": self.parameter_accuracy,
                "repetition_rate": self.repetition_rate,
                "by_category": self.by_category,
            },
            indent=2,
            sort_keys=True,
        )

    def to_text(self) -> str:
        lines = [
            f"tasks:              {self.task_count}",
            f"accuracy:           {self.accuracy * 100:.2f}%",
            f"success rate:       {self.success_rate * 100:.2f}%",
            f"parameter accuracy: {self.parameter_accuracy * 100:.2f}%",
            f"repetition rate:    {self.repetition_rate:.4f}",
            "by category:",
        ]
        for cat, row in self.by_category.items():
            lines.append(
                f"  {cat:<28} n={row['count']:<3} "
                f"accuracy={row['accuracy'] * 100:6.2f}% success={row['success_rate'] * 100:6.2f}%"
            )
        return "\n".join(lines)


def compute_metrics(
    outcomes: list[TaskOutcome], traces: list[GroundTruthTrace]
) -> MetricsReport:
    n = len(outcomes)
    if n == 0:
        raise ValueError("no outcomes to score")
    successes = sum(1 for o in outcomes if o.success)
    clean = sum(1 for o in outcomes if o.success and not o.had_exception)
    total_calls = sum(len(o.calls) for o in outcomes)
    valid_calls = sum(1 for o in outcomes for _, verdict, _ in o.calls if verdict == "valid")
    total_repeats = sum(count_repeated_calls([c for c, _, _ in o.calls]) for o in outcomes)
    total_gt = sum(len(t.calls) for t in traces)

    by_cat = {}
    for cat in CATEGORIES:
        rows = [o for o in outcomes if o.category == cat]
        if not rows:
            continue
        by_cat[cat] = {
            "count": len(rows),
            "accuracy": sum(1 for o in rows if o.success and not o.had_exception) / len(rows),
            "success_rate": sum(1 for o in rows if o.success) / len(rows),
        }

    return MetricsReport(
        task_count=n,
        accuracy=clean / n,
        success_rate=successes / n,
        parameter_accuracy=(valid_calls / total_calls) if total_calls else 1.0,
        repetition_rate=(total_repeats / total_gt) if total_gt else 0.0,
        by_category=by_cat,
    )
