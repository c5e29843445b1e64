"""Worker loop: tool selection and execution for one subtask."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from ..errors import MalformedModelOutput, ScriptExhausted, ShapeGptError
from ..model import describe_dataset
from ..tools import Registry, ToolCall, ToolResult, Verdict, invoke, validate_call, wire_declarations
from ..tools.schema import export_schemas
from ..tools.workspace import Workspace
from .chat import ChatTurn, llm_chat
from .planner import Subtask


def _prompt(name: str) -> str:
    return (resources.files(__package__) / "prompts" / name).read_text(encoding="utf-8")


@dataclass
class WorkerReport:
    subtask_id: int
    calls: list = field(default_factory=list)  # [(ToolCall, Verdict, ToolResult)]
    success: bool = False
    summary: str = ""


def worker_system_prompt(ws: Workspace, registry: Registry, cfg) -> str:
    blocks = [_prompt("worker_system.txt")]
    if getattr(cfg, "task_example", True):
        blocks.append(_prompt("task_example.txt"))
    blocks.append("Function library:\n")
    blocks.append(
        export_schemas(registry, "yaml-style", include_examples=getattr(cfg, "api_example", True))
    )
    if ws.layers:
        blocks.append("Current layers:")
        for handle in sorted(ws.layers):
            blocks.append(f"--- {handle} ---")
            blocks.append(describe_dataset(ws.layers[handle]).to_text(limit=2048))
    else:
        blocks.append("No layers loaded yet.")
    return "\n".join(blocks)


def worker_step(
    subtask: Subtask,
    ws: Workspace,
    registry: Registry,
    cfg,
    on_event=None,
) -> WorkerReport:
    """Drive the worker client until it reports completion or hits the cap.

    Validation failures and execution errors are fed back as tool results (the
    retry pathway); they never escape the loop.
    """
    emit = on_event or (lambda e: None)
    subtask.status = "running"
    report = WorkerReport(subtask.id)
    tools = wire_declarations(registry)
    turns: list[ChatTurn] = [
        ChatTurn("system", worker_system_prompt(ws, registry, cfg)),
        ChatTurn("user", f"Subtask {subtask.id}: {subtask.instruction}"),
    ]
    completed = False
    for _ in range(cfg.max_worker_calls_per_subtask):
        try:
            turn = llm_chat(cfg.worker_client, turns, tools)
        except (MalformedModelOutput, ScriptExhausted, ShapeGptError) as e:
            emit({"type": "worker_exception", "subtask": subtask.id,
                  "error_kind": e.kind if isinstance(e, ShapeGptError) else "Error",
                  "message": str(e)})
            if isinstance(e, MalformedModelOutput):
                turns.append(ChatTurn("user", "Your last reply was unreadable. "
                                              "Call a tool or reply with a completion report."))
                continue
            break  # transport/script failure: give up on the subtask
        turns.append(turn)
        if turn.tool_calls:
            for req in turn.tool_calls:
                verdict = validate_call(req.call, registry)
                emit({
                    "type": "tool_call",
                    "subtask": subtask.id,
                    "name": req.call.name,
                    "arguments": req.call.arguments,
                    "verdict": str(verdict),
                })
                if verdict.is_valid:
                    result = invoke(req.call, ws, registry, cfg.geometry)
                else:
                    result = ToolResult(
                        "error", f"invalid call: {verdict}", None, "ValidationError"
                    )
                report.calls.append((req.call, verdict, result))
                emit({
                    "type": "tool_result",
                    "subtask": subtask.id,
                    "name": req.call.name,
                    "status": result.status,
                    "message": result.message,
                    "error_kind": result.error_kind,
                    "output_handle": result.output_handle,
                })
                turns.append(
                    ChatTurn("tool", result.message, tool_result_for=req.call_id)
                )
            continue
        # plain-text completion
        report.summary = (turn.content or "").strip()
        completed = True
        break
    if not completed and not report.summary:
        report.summary = "worker stopped before reporting completion"
    last_ok = not report.calls or report.calls[-1][2].ok
    report.success = completed and last_ok
    subtask.status = "done" if report.success else "failed"
    return report
