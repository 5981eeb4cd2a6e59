"""Agent turn loop, sub-task delegation, and deviation handling.

An agent is an LLM backend plus tool schemas, tool handlers, and an
append-only conversation memory. run_task() drives one agent until it emits
the DONE sentinel (a line `DONE`, optionally `DONE: <result>`), dispatching
validated tool calls to their handlers along the way; handlers may in turn
delegate() a request to another agent, which suspends the parent until the
child finishes. Turn budgets bound everything: a task either completes or
fails within its max_turns, and failures carry the task path (for example
"planner/rule_manager") so callers can tell whose budget ran out.

Malformed tool payloads never reach handlers: the gateway raises, the
orchestrator re-prompts with the expected schema, and after the corrective
budget (2) is spent the task fails with ProtocolDeviation.

Every message, dispatch, delegation edge, and deviation is appended to a
TraceLog as JSON lines keyed by sequence number only (no timestamps), so
scripted runs are byte-identical and can be diffed across machines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Union

from .gateway import (
    Backend,
    MalformedToolPayload,
    Message,
    Role,
    ToolCall,
    ToolSchema,
    complete,
)

CORRECTIVE_BUDGET = 2
DONE_SENTINEL = "DONE"

ToolResult = Union[str, dict, list]
ToolHandler = Callable[[Any, "TaskHandle"], ToolResult]


class OrchestratorError(RuntimeError):
    pass


class MaxTurnsExceeded(OrchestratorError):
    pass


class DelegationCycle(OrchestratorError):
    pass


class ProtocolDeviation(OrchestratorError):
    pass


class TaskStatus(str, Enum):
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


@dataclass
class AgentSpec:
    """An agent: backend, prompt, tools with handlers, and its memory."""

    name: str
    system_prompt: str
    backend: Backend
    tools: tuple[ToolSchema, ...] = ()
    handlers: dict[str, ToolHandler] = field(default_factory=dict)
    memory: list[Message] = field(default_factory=list)
    max_turns: int = 20
    require_tool: bool = False

    def __post_init__(self) -> None:
        if not self.system_prompt:
            raise ValueError(f"agent {self.name!r} needs a non-empty system prompt")

    def full_system_prompt(self) -> str:
        parts = [self.system_prompt]
        for tool in self.tools:
            if tool.instruction:
                parts.append(tool.instruction)
        return "\n\n".join(parts)


@dataclass
class TaskHandle:
    agent: AgentSpec
    parent: Optional["TaskHandle"] = None
    turn_count: int = 0
    max_turns: int = 20
    status: TaskStatus = TaskStatus.RUNNING
    result: Optional[Message] = None
    error: Optional[str] = None

    def path(self) -> str:
        names = []
        node: Optional[TaskHandle] = self
        while node is not None:
            names.append(node.agent.name)
            node = node.parent
        return "/".join(reversed(names))


class TraceLog:
    """Ordered JSON-line event log; deterministic for scripted backends."""

    def __init__(self) -> None:
        self.entries: list[dict[str, Any]] = []

    def emit(self, event: str, **fields: Any) -> None:
        entry: dict[str, Any] = {"seq": len(self.entries), "event": event}
        entry.update(fields)
        self.entries.append(entry)

    def dumps(self) -> str:
        return "\n".join(json.dumps(e, sort_keys=True) for e in self.entries)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps() + "\n")

    def events(self, kind: str) -> list[dict[str, Any]]:
        return [e for e in self.entries if e["event"] == kind]


def parse_done(content: str) -> tuple[bool, str]:
    """Detect the DONE sentinel; return (found, extracted result)."""
    lines = content.splitlines()
    for i, line in enumerate(lines):
        stripped = line.strip()
        if stripped == DONE_SENTINEL:
            return True, "\n".join(lines[:i]).strip()
        if stripped.startswith(DONE_SENTINEL + ":"):
            return True, stripped[len(DONE_SENTINEL) + 1 :].strip()
    return False, ""


def _corrective_message(agent: AgentSpec, detail: str, tool_name: Optional[str]) -> Message:
    tools = [t for t in agent.tools if tool_name is None or t.tool_name == tool_name]
    schemas = "\n".join(
        f"- {t.tool_name}: {json.dumps(t.schema, sort_keys=True)}" for t in tools
    )
    text = (
        f"Your previous reply did not follow the required format ({detail}). "
        f"Reply again with a single JSON object of the form "
        f'{{"tool": <name>, "payload": ...}} matching one of these schemas:\n{schemas}'
    )
    return Message(role=Role.USER, content=text)


class Orchestrator:
    def __init__(self, trace: Optional[TraceLog] = None) -> None:
        self.trace = trace or TraceLog()

    # -- internals ---------------------------------------------------------

    def _record(self, task: TaskHandle, message: Message) -> None:
        fields: dict[str, Any] = {
            "path": task.path(),
            "role": message.role.value,
            "content": message.content,
        }
        if message.tool_call is not None:
            fields["tool"] = message.tool_call.tool_name
        self.trace.emit("message", **fields)

    def _fail(self, task: TaskHandle, error: OrchestratorError) -> OrchestratorError:
        task.status = TaskStatus.FAILED
        task.error = str(error)
        self.trace.emit("task_end", path=task.path(), status="failed", error=str(error))
        return error

    # -- public api --------------------------------------------------------

    def run_task(
        self,
        agent: AgentSpec,
        input: Message,
        max_turns: Optional[int] = None,
        parent: Optional[TaskHandle] = None,
    ) -> Message:
        """Drive one agent to its DONE sentinel; return the result message."""
        budget = max_turns if max_turns is not None else agent.max_turns
        if budget < 1:
            raise ValueError("max_turns must be at least 1")
        task = TaskHandle(agent=agent, parent=parent, max_turns=budget)
        self.trace.emit("task_start", path=task.path(), max_turns=budget)
        agent.memory.append(input)
        self._record(task, input)

        deviations = 0
        system = Message(role=Role.SYSTEM, content=agent.full_system_prompt())
        while True:
            if task.turn_count >= task.max_turns:
                raise self._fail(
                    task,
                    MaxTurnsExceeded(f"{task.path()}: no DONE within {task.max_turns} turns"),
                )
            task.turn_count += 1
            try:
                reply = complete(agent.backend, [system, *agent.memory], agent.tools)
            except MalformedToolPayload as exc:
                deviations += 1
                self.trace.emit(
                    "deviation",
                    path=task.path(),
                    attempt=deviations,
                    detail=str(exc),
                )
                if deviations > CORRECTIVE_BUDGET:
                    raise self._fail(
                        task,
                        ProtocolDeviation(
                            f"{task.path()}: format errors persisted after "
                            f"{CORRECTIVE_BUDGET} corrective attempts: {exc}"
                        ),
                    ) from exc
                corrective = _corrective_message(agent, exc.detail, exc.tool_name)
                agent.memory.append(corrective)
                self._record(task, corrective)
                continue

            agent.memory.append(reply)
            self._record(task, reply)

            if reply.role is Role.TOOL and reply.tool_call is not None:
                call = reply.tool_call
                handler = agent.handlers.get(call.tool_name)
                if handler is None:
                    raise self._fail(
                        task,
                        OrchestratorError(
                            f"{task.path()}: tool {call.tool_name!r} has no handler"
                        ),
                    )
                self.trace.emit(
                    "tool_dispatch", path=task.path(), tool=call.tool_name
                )
                try:
                    result = handler(call.payload, task)
                except OrchestratorError as exc:
                    raise self._fail(task, exc) from exc
                if isinstance(result, str):
                    content: str = result
                    payload: Any = None
                else:
                    content = json.dumps(result, sort_keys=True)
                    payload = result
                outcome = Message(
                    role=Role.TOOL,
                    content=content,
                    tool_call=ToolCall(call.tool_name, payload),
                )
                agent.memory.append(outcome)
                self._record(task, outcome)
                continue

            done, result_text = parse_done(reply.content)
            if done:
                task.status = TaskStatus.DONE
                task.result = Message(role=Role.ASSISTANT, content=result_text)
                self.trace.emit(
                    "task_end",
                    path=task.path(),
                    status="done",
                    turns=task.turn_count,
                )
                return task.result

            if agent.require_tool:
                deviations += 1
                self.trace.emit(
                    "deviation",
                    path=task.path(),
                    attempt=deviations,
                    detail="free text where a tool call was required",
                )
                if deviations > CORRECTIVE_BUDGET:
                    raise self._fail(
                        task,
                        ProtocolDeviation(
                            f"{task.path()}: free text persisted after "
                            f"{CORRECTIVE_BUDGET} corrective attempts"
                        ),
                    )
                corrective = _corrective_message(
                    agent, "a tool call was required", None
                )
                agent.memory.append(corrective)
                self._record(task, corrective)
            # otherwise: intermediate reasoning text; loop for the next turn

    def delegate(
        self,
        parent_task: TaskHandle,
        child_agent: AgentSpec,
        request: Message,
        max_turns: Optional[int] = None,
    ) -> Message:
        """Run a child agent to completion on behalf of a running task."""
        node: Optional[TaskHandle] = parent_task
        while node is not None:
            if node.agent.name == child_agent.name:
                raise self._fail(
                    parent_task,
                    DelegationCycle(
                        f"{parent_task.path()}: cannot delegate to "
                        f"{child_agent.name!r}, already on the task path"
                    ),
                )
            node = node.parent
        self.trace.emit(
            "delegate", parent=parent_task.path(), child=child_agent.name
        )
        try:
            return self.run_task(
                child_agent, request, max_turns=max_turns, parent=parent_task
            )
        except OrchestratorError:
            parent_task.status = TaskStatus.FAILED
            raise


__all__ = [
    "AgentSpec",
    "CORRECTIVE_BUDGET",
    "DONE_SENTINEL",
    "DelegationCycle",
    "MaxTurnsExceeded",
    "Orchestrator",
    "OrchestratorError",
    "ProtocolDeviation",
    "TaskHandle",
    "TaskStatus",
    "ToolHandler",
    "TraceLog",
    "parse_done",
]
