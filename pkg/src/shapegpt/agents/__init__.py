"""Planner/worker agent runtime."""

from .chat import (
    ChatTurn,
    OpenAIChatClient,
    ScriptedClient,
    ToolCallRequest,
    assistant_calls,
    assistant_text,
    llm_chat,
)
from .planner import PlannerDecision, PlannerState, Subtask, parse_envelope, planner_step
from .session import (
    SessionConfig,
    SessionOutcome,
    canonical_call_key,
    count_repeated_calls,
    run_session,
    stage_inputs,
)
from .worker import WorkerReport, worker_step, worker_system_prompt

__all__ = [
    "ChatTurn",
    "OpenAIChatClient",
    "PlannerDecision",
    "PlannerState",
    "ScriptedClient",
    "SessionConfig",
    "SessionOutcome",
    "Subtask",
    "ToolCallRequest",
    "WorkerReport",
    "assistant_calls",
    "assistant_text",
    "canonical_call_key",
    "count_repeated_calls",
    "llm_chat",
    "parse_envelope",
    "planner_step",
    "run_session",
    "stage_inputs",
    "worker_step",
    "worker_system_prompt",
]
