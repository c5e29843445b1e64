"""Model-client contract: chat turns, a scripted client, and an HTTP client.

The remote client speaks the chat-completions wire protocol; the scripted
client replays a canned decision list and is what the test suites and the
benchmark's deterministic runners plug in.
"""

from __future__ import annotations

import json
import os
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from ..errors import MalformedModelOutput, ScriptExhausted, TransportError
from ..tools.schema import ToolCall

ENV_URL = "SHAPEGPT_LLM_URL"
ENV_MODEL = "SHAPEGPT_LLM_MODEL"
ENV_KEY = "SHAPEGPT_LLM_KEY"


@dataclass(frozen=True)
class ToolCallRequest:
    call_id: str
    call: ToolCall


@dataclass(frozen=True)
class ChatTurn:
    role: str  # system | user | assistant | tool
    content: Optional[str] = None
    tool_calls: tuple[ToolCallRequest, ...] = ()
    tool_result_for: Optional[str] = None  # call id a tool turn answers

    def __post_init__(self):
        if self.content is None and not self.tool_calls:
            raise ValueError("a turn carries content or tool calls")


def assistant_calls(*calls: ToolCall, prefix: str = "call") -> ChatTurn:
    """Assistant turn carrying tool calls (ids auto-assigned)."""
    reqs = tuple(
        ToolCallRequest(f"{prefix}_{i}", c) for i, c in enumerate(calls, start=1)
    )
    return ChatTurn("assistant", None, reqs)


def assistant_text(text: str) -> ChatTurn:
    return ChatTurn("assistant", text)


def llm_chat(client, turns: Sequence[ChatTurn], tools: Optional[list[dict]] = None) -> ChatTurn:
    """Ask the client for the next turn. Turns must start with a system turn."""
    if not turns:
        raise ValueError("turns must be non-empty")
    if turns[0].role != "system":
        raise ValueError("first turn must be the system prompt")
    return client.chat(list(turns), tools)


class ScriptedClient:
    """Replays canned turns in order, or defers to a callable script.

    A callable script receives (turns, tools) and returns the next ChatTurn;
    a list script is consumed one turn per chat() call.
    """

    def __init__(self, script):
        self._fn: Optional[Callable] = script if callable(script) else None
        self._turns = None if callable(script) else list(script)
        self._cursor = 0
        self.exchanges = 0

    def chat(self, turns, tools=None) -> ChatTurn:
        self.exchanges += 1
        if self._fn is not None:
            return self._fn(turns, tools)
        if self._cursor >= len(self._turns):
            raise ScriptExhausted(f"script exhausted after {self._cursor} turn(s)")
        turn = self._turns[self._cursor]
        self._cursor += 1
        return turn


class OpenAIChatClient:
    """Minimal chat-completions client (urllib, retries, no streaming)."""

    def __init__(
        self,
        url: Optional[str] = None,
        model: Optional[str] = None,
        api_key: Optional[str] = None,
        timeout: float = 60.0,
        retries: int = 3,
    ):
        self.url = url or os.environ.get(ENV_URL, "")
        self.model = model or os.environ.get(ENV_MODEL, "")
        self.api_key = api_key if api_key is not None else os.environ.get(ENV_KEY, "")
        self.timeout = timeout
        self.retries = retries
        if not self.url or not self.model:
            raise ValueError(
                f"remote client needs an endpoint and model ({ENV_URL}, {ENV_MODEL})"
            )

    def _encode_turn(self, turn: ChatTurn) -> dict:
        msg: dict[str, Any] = {"role": turn.role}
        if turn.role == "tool":
            msg["tool_call_id"] = turn.tool_result_for
            msg["content"] = turn.content or ""
            return msg
        msg["content"] = turn.content
        if turn.tool_calls:
            msg["tool_calls"] = [
                {
                    "id": req.call_id,
                    "type": "function",
                    "function": {
                        "name": req.call.name,
                        "arguments": json.dumps(req.call.arguments),
                    },
                }
                for req in turn.tool_calls
            ]
        return msg

    def chat(self, turns, tools=None) -> ChatTurn:
        body: dict[str, Any] = {
            "model": self.model,
            "messages": [self._encode_turn(t) for t in turns],
        }
        if tools:
            body["tools"] = [{"type": "function", "function": t} for t in tools]
        payload = json.dumps(body).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"

        last_err: Optional[Exception] = None
        for attempt in range(self.retries):
            req = urllib.request.Request(self.url, data=payload, headers=headers)
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    data = json.loads(resp.read().decode("utf-8"))
                return self._decode_response(data)
            except (urllib.error.URLError, TimeoutError, ConnectionError, OSError) as e:
                last_err = e
                time.sleep(min(0.5 * 2**attempt, 4.0))
        raise TransportError(f"chat endpoint unreachable after {self.retries} tries: {last_err}")

    def _decode_response(self, data: dict) -> ChatTurn:
        try:
            msg = data["choices"][0]["message"]
        except (KeyError, IndexError, TypeError):
            raise MalformedModelOutput(f"unexpected response shape: {str(data)[:200]}")
        reqs = []
        for tc in msg.get("tool_calls") or ():
            try:
                fn = tc["function"]
                args_text = fn.get("arguments") or "{}"
                arguments = json.loads(args_text)
                if not isinstance(arguments, dict):
                    raise ValueError("arguments must be an object")
                reqs.append(
                    ToolCallRequest(tc.get("id") or f"call_{len(reqs) + 1}", ToolCall(fn["name"], arguments))
                )
            except (KeyError, ValueError, TypeError) as e:
                raise MalformedModelOutput(f"unparseable tool call: {e}")
        content = msg.get("content")
        if content is None and not reqs:
            raise MalformedModelOutput("assistant turn with neither content nor tool calls")
        return ChatTurn("assistant", content, tuple(reqs))
