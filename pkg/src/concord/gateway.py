"""Chat-completion gateway: one message/tool protocol over swappable backends.

Agents speak to a Backend through complete(), which parses the raw reply:
a JSON object of the shape {"tool": <registered name>, "payload": ...} is
validated against the tool's JSON schema and delivered as a Tool message;
anything else is a free-text Assistant message. A payload that parses but
fails its schema raises MalformedToolPayload here, at the gateway, so the
agents never see an invalid tool call.

Backends:

* ScriptedBackend: deterministic lookup (prompt hash -> reply) or a plain
  callable, for tests and offline evaluation;
* ReplayBackend / Recorder: newline-delimited JSON recordings of full
  sessions, byte-checked on replay (ReplayMismatch pinpoints the first
  differing turn);
* RemoteBackend: OpenAI-style /v1/chat/completions over HTTP, temperature 0
  by default, bounded retries with exponential backoff honoring Retry-After,
  credential read from an environment variable named in the config.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Mapping, Optional, Protocol, Sequence, Union

import jsonschema


class Role(str, Enum):
    SYSTEM = "system"
    USER = "user"
    ASSISTANT = "assistant"
    TOOL = "tool"


@dataclass(frozen=True)
class ToolCall:
    tool_name: str
    payload: Any

    def to_dict(self) -> dict[str, Any]:
        return {"tool_name": self.tool_name, "payload": self.payload}

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "ToolCall":
        return ToolCall(tool_name=d["tool_name"], payload=d.get("payload"))


@dataclass(frozen=True)
class Message:
    role: Role
    content: str
    tool_call: Optional[ToolCall] = None

    def __post_init__(self) -> None:
        if self.role is Role.TOOL and self.tool_call is None:
            raise ValueError("Tool messages must carry a tool_call")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"role": self.role.value, "content": self.content}
        if self.tool_call is not None:
            out["tool_call"] = self.tool_call.to_dict()
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Message":
        tc = d.get("tool_call")
        return Message(
            role=Role(d["role"]),
            content=d["content"],
            tool_call=ToolCall.from_dict(tc) if tc else None,
        )


@dataclass(frozen=True)
class ToolSchema:
    tool_name: str
    schema: Mapping[str, Any]
    instruction: str = ""


class GatewayError(RuntimeError):
    pass


class BackendUnavailable(GatewayError):
    """Network failure, timeout, or a non-retryable server error."""


class RateLimited(GatewayError):
    """Retry budget exhausted against HTTP 429 responses."""


class MalformedToolPayload(GatewayError):
    """Reply parsed as a tool call whose payload fails its schema."""

    def __init__(self, tool_name: str, detail: str) -> None:
        super().__init__(f"tool {tool_name!r} payload invalid: {detail}")
        self.tool_name = tool_name
        self.detail = detail


class ReplayMismatch(GatewayError):
    """Replayed conversation diverged from the recording."""


class Backend(Protocol):
    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str: ...


def prompt_hash(messages: Sequence[Message]) -> str:
    canon = json.dumps([m.to_dict() for m in messages], sort_keys=True)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def parse_response(raw: str, tools: Sequence[ToolSchema]) -> Message:
    """Classify a raw backend reply as a validated tool call or free text."""
    registered = {t.tool_name: t for t in tools}
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, TypeError):
        return Message(role=Role.ASSISTANT, content=raw)
    if isinstance(data, dict) and data.get("tool") in registered:
        name = data["tool"]
        payload = data.get("payload")
        try:
            jsonschema.validate(payload, registered[name].schema)
        except jsonschema.ValidationError as exc:
            path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise MalformedToolPayload(name, f"at {path}: {exc.message}") from exc
        return Message(role=Role.TOOL, content=raw, tool_call=ToolCall(name, payload))
    return Message(role=Role.ASSISTANT, content=raw)


def complete(
    backend: Backend,
    messages: Sequence[Message],
    tools: Sequence[ToolSchema] = (),
) -> Message:
    if not messages:
        raise ValueError("messages must be non-empty")
    if messages[0].role is not Role.SYSTEM:
        raise ValueError("first message must be the system prompt")
    raw = backend.complete_raw(messages, tools)
    return parse_response(raw, tools)


# ---------------------------------------------------------------------------
# deterministic backends

ScriptFn = Callable[[Sequence[Message], Sequence[ToolSchema]], str]


class ScriptedBackend:
    """Deterministic canned replies: hash lookup table or a callable."""

    def __init__(self, script: Union[Mapping[str, str], ScriptFn]) -> None:
        self.script = script

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        if callable(self.script):
            return self.script(messages, tools)
        key = prompt_hash(messages)
        if key not in self.script:
            raise LookupError(f"no scripted reply for prompt hash {key[:12]}…")
        return self.script[key]


def _request_dict(messages: Sequence[Message], tools: Sequence[ToolSchema]) -> dict[str, Any]:
    return {
        "messages": [m.to_dict() for m in messages],
        "tools": [t.tool_name for t in tools],
    }


class Recorder:
    """Wrap any backend and capture (request, response) turns to JSONL."""

    def __init__(self, inner: Backend) -> None:
        self.inner = inner
        self.turns: list[dict[str, Any]] = []

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        response = self.inner.complete_raw(messages, tools)
        self.turns.append(
            {
                "seq": len(self.turns),
                "request": _request_dict(messages, tools),
                "response": response,
            }
        )
        return response

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for turn in self.turns:
                fh.write(json.dumps(turn, sort_keys=True) + "\n")


def load_recording(path: str) -> list[dict[str, Any]]:
    turns = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                turns.append(json.loads(line))
    return turns


class ReplayBackend:
    """Re-serve a recording, insisting the conversation is identical."""

    def __init__(self, turns: Sequence[Mapping[str, Any]]) -> None:
        self.turns = list(turns)
        self.cursor = 0

    @staticmethod
    def from_file(path: str) -> "ReplayBackend":
        return ReplayBackend(load_recording(path))

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        if self.cursor >= len(self.turns):
            raise ReplayMismatch(
                f"recording exhausted: no turn {self.cursor} (have {len(self.turns)})"
            )
        recorded = self.turns[self.cursor]
        actual = _request_dict(messages, tools)
        if json.dumps(actual, sort_keys=True) != json.dumps(recorded["request"], sort_keys=True):
            got = actual["messages"]
            want = recorded["request"]["messages"]
            detail = "different tools or message count"
            for i, (a, b) in enumerate(zip(got, want)):
                if a != b:
                    detail = f"message {i} differs ({a.get('role')}: {a.get('content', '')[:60]!r})"
                    break
            raise ReplayMismatch(f"turn {self.cursor} diverged from recording: {detail}")
        self.cursor += 1
        return recorded["response"]


# ---------------------------------------------------------------------------
# remote backend


@dataclass
class RemoteConfig:
    endpoint: str
    model: str
    credential_env: str = "LLM_API_KEY"
    temperature: float = 0.0
    timeout: float = 60.0
    max_retries: int = 3


class RemoteBackend:
    """OpenAI-compatible chat-completions client."""

    def __init__(
        self,
        config: RemoteConfig,
        client: Optional[Any] = None,
        sleeper: Callable[[float], None] = time.sleep,
    ) -> None:
        self.config = config
        self._client = client
        self._sleeper = sleeper

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.config.credential_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        import httpx

        del tools  # tool use is plain JSON in content; nothing vendor-specific
        client = self._client or httpx.Client(timeout=self.config.timeout)
        owns_client = self._client is None
        body = {
            "model": self.config.model,
            "temperature": self.config.temperature,
            "messages": [
                {"role": m.role.value, "content": m.content} for m in messages
            ],
        }
        url = self.config.endpoint.rstrip("/") + "/v1/chat/completions"
        try:
            last_error: Optional[str] = None
            for attempt in range(self.config.max_retries + 1):
                try:
                    resp = client.post(url, json=body, headers=self._headers())
                except httpx.HTTPError as exc:
                    last_error = str(exc)
                    if attempt == self.config.max_retries:
                        raise BackendUnavailable(f"request failed: {exc}") from exc
                    self._sleeper(0.5 * (2**attempt))
                    continue
                if resp.status_code == 429 or resp.status_code >= 500:
                    last_error = f"HTTP {resp.status_code}"
                    if attempt == self.config.max_retries:
                        if resp.status_code == 429:
                            raise RateLimited("rate limit persisted after retries")
                        raise BackendUnavailable(f"server error {resp.status_code}")
                    retry_after = resp.headers.get("retry-after")
                    delay = float(retry_after) if retry_after else 0.5 * (2**attempt)
                    self._sleeper(delay)
                    continue
                if resp.status_code >= 400:
                    raise BackendUnavailable(f"HTTP {resp.status_code}: {resp.text[:200]}")
                data = resp.json()
                try:
                    return data["choices"][0]["message"]["content"]
                except (KeyError, IndexError, TypeError) as exc:
                    raise BackendUnavailable(f"unexpected response shape: {exc}") from exc
            raise BackendUnavailable(f"retries exhausted: {last_error}")
        finally:
            if owns_client:
                client.close()


__all__ = [
    "Backend",
    "BackendUnavailable",
    "GatewayError",
    "MalformedToolPayload",
    "Message",
    "RateLimited",
    "Recorder",
    "RemoteBackend",
    "RemoteConfig",
    "ReplayBackend",
    "ReplayMismatch",
    "Role",
    "ScriptedBackend",
    "ToolCall",
    "ToolSchema",
    "complete",
    "load_recording",
    "parse_response",
    "prompt_hash",
]
