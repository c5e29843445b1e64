"""Planner loop: goal decomposition, progress monitoring, strict envelopes."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from ..errors import MalformedModelOutput
from .chat import ChatTurn, llm_chat


def _prompt(name: str) -> str:
    return (resources.files(__package__) / "prompts" / name).read_text(encoding="utf-8")


@dataclass
class Subtask:
    id: int
    instruction: str
    status: str = "pending"  # pending | running | done | failed


@dataclass
class PlannerState:
    user_goal: str
    memory: list = field(default_factory=list)  # [(Subtask, WorkerReport)]
    done: bool = False
    iterations_used: int = 0
    next_subtask_id: int = 1


@dataclass(frozen=True)
class PlannerDecision:
    kind: str  # "emit" | "finish"
    subtask: Optional[Subtask] = None
    summary: Optional[str] = None
    forced: bool = False       # cap or malformed-output fallback
    malformed: int = 0         # unparseable planner replies consumed


def parse_envelope(text: Optional[str]) -> dict:
    """The planner must answer {"subtask": ...} or {"finish": ...}."""
    if not text:
        raise MalformedModelOutput("empty planner reply")
    snippet = text.strip()
    if snippet.startswith("```"):
        snippet = snippet.strip("`")
        if snippet.startswith("json"):
            snippet = snippet[4:]
    start = snippet.find("{")
    end = snippet.rfind("}")
    if start < 0 or end <= start:
        raise MalformedModelOutput(f"no JSON object in planner reply: {text[:120]!r}")
    try:
        obj = json.loads(snippet[start : end + 1])
    except json.JSONDecodeError as e:
        raise MalformedModelOutput(f"bad planner JSON: {e}")
    if not isinstance(obj, dict) or len(set(obj) & {"subtask", "finish"}) != 1:
        raise MalformedModelOutput("planner reply must carry exactly one of subtask/finish")
    key = "subtask" if "subtask" in obj else "finish"
    if not isinstance(obj[key], str) or not obj[key].strip():
        raise MalformedModelOutput(f"planner {key} must be non-empty text")
    return {key: obj[key].strip()}


def _memory_digest(state: PlannerState) -> str:
    if not state.memory:
        return "No subtasks executed yet."
    lines = []
    for sub, report in state.memory:
        mark = "ok" if report.success else "FAILED"
        lines.append(f"{sub.id}. [{mark}] {sub.instruction}")
        if report.summary:
            lines.append(f"   worker: {report.summary}")
    return "\n".join(lines)


def planner_turns(state: PlannerState) -> list[ChatTurn]:
    return [
        ChatTurn("system", _prompt("planner_system.txt")),
        ChatTurn(
            "user",
            f"Goal: {state.user_goal}\n\nExecuted so far:\n{_memory_digest(state)}\n\n"
            "What is the next step?",
        ),
    ]


def planner_step(state: PlannerState, cfg) -> PlannerDecision:
    """One planning decision; may consume up to two model exchanges (re-ask)."""
    if state.done:
        raise ValueError("planner already finished")
    malformed = 0
    turns = planner_turns(state)
    for attempt in range(2):
        if state.iterations_used >= cfg.max_planner_iterations:
            state.done = True
            return PlannerDecision(
                "finish",
                summary=f"stopped: planner iteration cap ({cfg.max_planner_iterations}) reached",
                forced=True,
                malformed=malformed,
            )
        state.iterations_used += 1
        try:
            reply = llm_chat(cfg.planner_client, turns)
            envelope = parse_envelope(reply.content)
        except MalformedModelOutput as e:
            malformed += 1
            if attempt == 0:
                turns = turns + [
                    ChatTurn(
                        "user",
                        'Reply with exactly one JSON object: {"subtask": "..."} or {"finish": "..."}.',
                    )
                ]
                continue
            state.done = True
            return PlannerDecision(
                "finish", summary=f"stopped: unparseable planner output ({e})",
                forced=True, malformed=malformed,
            )
        if "finish" in envelope:
            state.done = True
            return PlannerDecision("finish", summary=envelope["finish"], malformed=malformed)
        sub = Subtask(state.next_subtask_id, envelope["subtask"])
        state.next_subtask_id += 1
        return PlannerDecision("emit", subtask=sub, malformed=malformed)
    raise AssertionError("unreachable")
