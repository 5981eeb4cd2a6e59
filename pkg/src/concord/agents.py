"""The three concrete agents: rule retriever, rule manager, planner.

The pipeline runs reflection before analysis: a planner session first
delegates to the rule manager, which interrogates the rule retriever one
(user, field) question at a time and assembles a rule sheet; only then
does the planner emit plans. Feedback is a further user turn on the same
session, with history retained.

The rule manager's control flow is mechanical (walk the user/field grid,
retry with rephrasings, emit the sheet), so its backend here is a
deterministic engine rather than a language model; it still speaks the
ordinary tool protocol through the orchestrator, so budgets, validation,
and tracing apply to it unchanged. Planner and retriever backends are
pluggable: scripted ones for tests and evaluation, a remote one for live
runs.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Mapping, Optional, Sequence

from .docstore import DocumentStore, HashedBagOfWordsEmbedder, hybrid_retrieve, ingest
from .gateway import Backend, Message, Role, ToolSchema
from .model import (
    Plan,
    Resolution,
    RuleKind,
    Scenario,
    WORKWEEK,
    Weekday,
)
from .orchestrator import AgentSpec, Orchestrator, TaskHandle, TraceLog
from .prompts import prompt_text

FIELDS = ("schedule", "preferences", "policies")
FIELD_KINDS = {
    "schedule": RuleKind.SCHEDULE,
    "preferences": RuleKind.PREFERENCE,
    "policies": RuleKind.POLICY,
}
FIELD_LABELS = {
    "schedule": "schedule entries",
    "preferences": "preferences",
    "policies": "policies",
}

NO_ANSWER = "DO-NOT-KNOW"
RETRY_BUDGET = 3
RETRIEVER_K = 6

RETRIEVER_MAX_TURNS = 4
MANAGER_MAX_TURNS = 60
PLANNER_MAX_TURNS = 20

DAY_BY_NAME = {
    "monday": Weekday.MON,
    "tuesday": Weekday.TUE,
    "wednesday": Weekday.WED,
    "thursday": Weekday.THU,
    "friday": Weekday.FRI,
    "saturday": Weekday.SAT,
    "sunday": Weekday.SUN,
}

_TAG_RE = re.compile(r"\[([a-z0-9][a-z0-9-]*)\]")

PLANNER_PROMPT_BY_TITLE = {
    "Workplace Scheduling": "planner_workplace",
    "Assistive Care Robot": "planner_assistive_care",
    "Smart-home Temperature Control": "planner_smarthome",
}


def scenario_prompt(scenario: Scenario) -> str:
    """The planner system prompt for a scenario (generic if unknown)."""
    stem = PLANNER_PROMPT_BY_TITLE.get(scenario.name, "planner_generic")
    return prompt_text(stem)


# ---------------------------------------------------------------------------
# rule sheet


class FieldStatus(str, Enum):
    FILLED = "filled"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class RuleField:
    """One (user, field) cell: terminal status, attempts spent, entries."""

    status: FieldStatus
    attempts: int
    entries: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "attempts": self.attempts,
            "entries": list(self.entries),
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "RuleField":
        return RuleField(
            status=FieldStatus(d["status"]),
            attempts=int(d["attempts"]),
            entries=tuple(d.get("entries", ())),
        )


@dataclass(frozen=True)
class SheetSection:
    first_name: str
    schedule: RuleField
    preferences: RuleField
    policies: RuleField

    def field(self, name: str) -> RuleField:
        if name not in FIELDS:
            raise KeyError(f"unknown sheet field {name!r}")
        return getattr(self, name)


@dataclass(frozen=True)
class RuleSheet:
    """Nested per-user extraction; top-level keys are user first names."""

    sections: tuple[SheetSection, ...] = ()

    def section(self, first_name: str) -> SheetSection:
        for s in self.sections:
            if s.first_name == first_name:
                return s
        raise KeyError(f"no sheet section for {first_name!r}")

    def unresolved_fields(self) -> tuple[str, ...]:
        out = []
        for s in self.sections:
            for name in FIELDS:
                if s.field(name).status is FieldStatus.UNRESOLVED:
                    out.append(f"{s.first_name}.{name}")
        return tuple(out)

    def to_dict(self) -> dict[str, Any]:
        return {
            s.first_name: {name: s.field(name).to_dict() for name in FIELDS}
            for s in self.sections
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "RuleSheet":
        sections = tuple(
            SheetSection(
                first_name=name,
                schedule=RuleField.from_dict(fields["schedule"]),
                preferences=RuleField.from_dict(fields["preferences"]),
                policies=RuleField.from_dict(fields["policies"]),
            )
            for name, fields in d.items()
        )
        return RuleSheet(sections=sections)


_FIELD_SCHEMA = {
    "type": "object",
    "required": ["status", "attempts", "entries"],
    "additionalProperties": False,
    "properties": {
        "status": {"enum": ["filled", "unresolved"]},
        "attempts": {"type": "integer", "minimum": 1, "maximum": RETRY_BUDGET},
        "entries": {"type": "array", "items": {"type": "string"}},
    },
}

SHEET_SCHEMA = {
    "type": "object",
    "minProperties": 1,
    "additionalProperties": {
        "type": "object",
        "required": list(FIELDS),
        "additionalProperties": False,
        "properties": {name: _FIELD_SCHEMA for name in FIELDS},
    },
}

ASK_RETRIEVER_TOOL = ToolSchema(
    tool_name="ask_retriever",
    schema={
        "type": "object",
        "required": ["user", "field", "question"],
        "additionalProperties": False,
        "properties": {
            "user": {"type": "string", "minLength": 1},
            "field": {"enum": list(FIELDS)},
            "question": {"type": "string", "minLength": 1},
        },
    },
    instruction=(
        "To query the Rule Retriever, reply with a single JSON object "
        '{"tool": "ask_retriever", "payload": {"user": <first name>, '
        '"field": <schedule|preferences|policies>, "question": <text>}}.'
    ),
)

RULE_SHEET_TOOL = ToolSchema(
    tool_name="rule_sheet",
    schema=SHEET_SCHEMA,
    instruction=(
        "When every field has a terminal status, return the sheet with "
        '{"tool": "rule_sheet", "payload": {<first name>: {"schedule": ..., '
        '"preferences": ..., "policies": ...}}}.'
    ),
)

COLLECT_RULES_TOOL = ToolSchema(
    tool_name="collect_rules",
    schema={"type": ["object", "null"]},
    instruction=(
        "Before your first plan, gather every user's rules by replying "
        '{"tool": "collect_rules", "payload": {}}; the result is the rule sheet.'
    ),
)

DETECT_CONFLICTS_TOOL = ToolSchema(
    tool_name="detect_conflicts",
    schema={"type": ["object", "null"]},
    instruction=(
        "You may ask for the deterministic conflict analysis of the scenario "
        'rules with {"tool": "detect_conflicts", "payload": {}}.'
    ),
)


# ---------------------------------------------------------------------------
# planner output


class PlanParseError(ValueError):
    """The planner's final answer was not a readable plan payload."""


@dataclass(frozen=True)
class PlannerOutput:
    """What a planning turn returns: plans, resolutions, and the story."""

    plans: tuple[Plan, ...]
    resolutions: tuple[Resolution, ...] = ()
    explanation: str = ""
    unresolved_fields: tuple[str, ...] = ()

    def cited_rule_ids(self) -> tuple[str, ...]:
        seen = {rid for p in self.plans for a in p.actions for rid in a.rule_ids}
        return tuple(sorted(seen))

    def to_dict(self) -> dict[str, Any]:
        return {
            "plans": [p.to_dict() for p in self.plans],
            "resolutions": [r.to_dict() for r in self.resolutions],
            "explanation": self.explanation,
            "rule_citations": list(self.cited_rule_ids()),
            "unresolved_fields": list(self.unresolved_fields),
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "PlannerOutput":
        return PlannerOutput(
            plans=tuple(Plan.from_dict(p) for p in d.get("plans", ())),
            resolutions=tuple(Resolution.from_dict(r) for r in d.get("resolutions", ())),
            explanation=str(d.get("explanation", "")),
            unresolved_fields=tuple(d.get("unresolved_fields", ())),
        )


def parse_planner_output(text: str) -> PlannerOutput:
    """Parse a planner DONE payload; PlanParseError on anything unreadable."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PlanParseError(f"planner answer is not JSON: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise PlanParseError("planner answer must be a JSON object")
    try:
        return PlannerOutput.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise PlanParseError(f"unreadable plan payload: {exc!r}") from exc


def parse_query_days(query: str) -> tuple[Weekday, ...]:
    """Weekdays a user query asks about; the whole workweek when unstated."""
    lower = query.lower()
    named = [day for name, day in DAY_BY_NAME.items() if name in lower]
    if named:
        return tuple(sorted(set(named), key=lambda d: d.index))
    return WORKWEEK


# ---------------------------------------------------------------------------
# rule retriever


@dataclass(frozen=True)
class RetrieverAnswer:
    text: str
    chunk_ids: tuple[str, ...]


def _retriever_request(question: str, chunks: Sequence[tuple[str, str]]) -> str:
    blocks = "\n".join(f"--- {cid} ---\n{text}" for cid, text in chunks)
    return (
        f"Question: {question}\n\n"
        f"Context chunks:\n{blocks}\n\n"
        "Answer strictly from the chunks above."
    )


def retriever_answer(
    store: DocumentStore,
    question: str,
    backend: Backend,
    *,
    orchestrator: Optional[Orchestrator] = None,
    parent: Optional[TaskHandle] = None,
    k: int = RETRIEVER_K,
) -> Optional[RetrieverAnswer]:
    """Ask one question over the store; None when the backend cannot answer."""
    if not question.strip():
        raise ValueError("question must be non-empty")
    hits = hybrid_retrieve(store, question, k=k)
    chunks = []
    for hit in hits:
        chunk = store.chunk_by_id(hit.chunk_id)
        if chunk is not None:
            chunks.append((chunk.chunk_id, chunk.text))
    agent = AgentSpec(
        name="rule_retriever",
        system_prompt=prompt_text("retriever"),
        backend=backend,
        max_turns=RETRIEVER_MAX_TURNS,
    )
    orch = orchestrator or Orchestrator()
    request = Message(role=Role.USER, content=_retriever_request(question, chunks))
    if parent is None:
        result = orch.run_task(agent, request)
    else:
        result = orch.delegate(parent, agent, request)
    text = result.content.strip()
    if not text or text.startswith(NO_ANSWER):
        return None
    cited = tuple(cid for cid, _ in chunks if cid in text)
    return RetrieverAnswer(text=text, chunk_ids=cited)


class ReferenceRetrieverBackend:
    """Scripted retriever grounded in a scenario.

    Answers by quoting the asked user's rule lines of the asked kind, but
    only those whose [rule-id] tag is visible in the chunks injected into
    the request; retrieval misses therefore surface as missing entries or
    DO-NOT-KNOW rather than being papered over.
    """

    def __init__(self, scenario: Scenario) -> None:
        self.scenario = scenario

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        del tools
        request = messages[-1].content
        question, chunks = _split_retriever_request(request)
        lower = question.lower()
        user = next(
            (u for u in self.scenario.users if u.first_name.lower() in lower),
            None,
        )
        fld = _field_of_question(lower)
        if user is None or fld is None:
            return f"{NO_ANSWER}\nDONE"
        kind = FIELD_KINDS[fld]
        owned = [
            r for r in self.scenario.rules if r.owner == user.user_id and r.kind is kind
        ]
        if not owned:
            return (
                f"No {FIELD_LABELS[fld]} are recorded for {user.first_name}.\nDONE"
            )
        lines = []
        for rule in owned:
            holder = next((cid for cid, text in chunks if f"[{rule.rule_id}]" in text), None)
            if holder is not None:
                lines.append(f"- {rule.text} [{rule.rule_id}] (chunk {holder})")
        if not lines:
            return f"{NO_ANSWER}\nDONE"
        return "\n".join(lines) + "\nDONE"


def _split_retriever_request(request: str) -> tuple[str, list[tuple[str, str]]]:
    question = ""
    first = request.splitlines()[0] if request else ""
    if first.startswith("Question: "):
        question = first[len("Question: ") :]
    chunks: list[tuple[str, str]] = []
    parts = re.split(r"^--- (\S+) ---$", request, flags=re.MULTILINE)
    for i in range(1, len(parts) - 1, 2):
        chunks.append((parts[i], parts[i + 1]))
    return question, chunks


def _field_of_question(lower_question: str) -> Optional[str]:
    if "schedule" in lower_question:
        return "schedule"
    if "preference" in lower_question:
        return "preferences"
    if "polic" in lower_question:
        return "policies"
    return None


# ---------------------------------------------------------------------------
# rule manager


def question_for(name: str, fld: str, attempt: int) -> str:
    """Deterministic question template rotation, one rephrase per retry."""
    label = FIELD_LABELS[fld]
    if attempt <= 1:
        direct = {
            "schedule": f"What is {name}'s schedule?",
            "preferences": f"What are {name}'s preferences?",
            "policies": f"What policies does {name} follow?",
        }
        return direct[fld]
    if attempt == 2:
        return f"List all {label} for user {name}"
    return f"According to {name}'s document, what {label} apply?"


class ManagerEngine:
    """Deterministic backend walking the (user, field) grid with retries."""

    def __init__(self, first_names: Sequence[str], retry_budget: int = RETRY_BUDGET) -> None:
        if not first_names:
            raise ValueError("need at least one user")
        self.retry_budget = retry_budget
        self._pending = deque((name, fld) for name in first_names for fld in FIELDS)
        self._fields: dict[str, dict[str, RuleField]] = {n: {} for n in first_names}
        self._order = tuple(first_names)
        self._current: Optional[tuple[str, str]] = None
        self._attempts = 0
        self._sheet_sent = False

    def sheet(self) -> RuleSheet:
        sections = tuple(
            SheetSection(
                first_name=name,
                schedule=self._fields[name]["schedule"],
                preferences=self._fields[name]["preferences"],
                policies=self._fields[name]["policies"],
            )
            for name in self._order
        )
        return RuleSheet(sections=sections)

    def _ask(self) -> str:
        name, fld = self._current  # type: ignore[misc]
        payload = {
            "user": name,
            "field": fld,
            "question": question_for(name, fld, self._attempts),
        }
        return json.dumps({"tool": "ask_retriever", "payload": payload})

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        del tools
        last = messages[-1]
        if self._current is not None:
            if (
                last.role is not Role.TOOL
                or last.tool_call is None
                or last.tool_call.tool_name != "ask_retriever"
            ):
                raise RuntimeError("manager engine expected an ask_retriever result")
            content = last.content.strip()
            if content == NO_ANSWER and self._attempts < self.retry_budget:
                self._attempts += 1
                return self._ask()
            name, fld = self._current
            if content == NO_ANSWER:
                cell = RuleField(FieldStatus.UNRESOLVED, self._attempts)
            else:
                entries = tuple(
                    line.strip() for line in content.splitlines() if line.strip()
                )
                cell = RuleField(FieldStatus.FILLED, self._attempts, entries)
            self._fields[name][fld] = cell
            self._current = None
        if self._pending:
            self._current = self._pending.popleft()
            self._attempts = 1
            return self._ask()
        if not self._sheet_sent:
            self._sheet_sent = True
            return json.dumps({"tool": "rule_sheet", "payload": self.sheet().to_dict()})
        return "DONE: rule sheet delivered"


def manager_collect(
    first_names: Sequence[str],
    store: DocumentStore,
    retriever_backend: Backend,
    *,
    orchestrator: Optional[Orchestrator] = None,
    parent: Optional[TaskHandle] = None,
    retriever_k: int = RETRIEVER_K,
) -> RuleSheet:
    """Run the rule manager over the store; always returns a full sheet."""
    if not first_names:
        raise ValueError("first_names must be non-empty")
    orch = orchestrator or Orchestrator()
    captured: list[RuleSheet] = []

    def handle_ask(payload: Any, task: TaskHandle) -> str:
        answer = retriever_answer(
            store,
            payload["question"],
            retriever_backend,
            orchestrator=orch,
            parent=task,
            k=retriever_k,
        )
        return NO_ANSWER if answer is None else answer.text

    def handle_sheet(payload: Any, task: TaskHandle) -> str:
        del task
        captured.append(RuleSheet.from_dict(payload))
        return "rule sheet recorded"

    agent = AgentSpec(
        name="rule_manager",
        system_prompt=prompt_text("manager"),
        backend=ManagerEngine(first_names),
        tools=(ASK_RETRIEVER_TOOL, RULE_SHEET_TOOL),
        handlers={"ask_retriever": handle_ask, "rule_sheet": handle_sheet},
        max_turns=MANAGER_MAX_TURNS,
    )
    request = Message(role=Role.USER, content="Collect every user's rules.")
    if parent is None:
        orch.run_task(agent, request)
    else:
        orch.delegate(parent, agent, request)
    if not captured:
        raise RuntimeError("rule manager finished without emitting a sheet")
    return captured[-1]


# ---------------------------------------------------------------------------
# planner


@dataclass
class PlannerSession:
    """One conversation: scenario, store, agents, and retained history."""

    scenario: Scenario
    store: DocumentStore
    orchestrator: Orchestrator
    planner: AgentSpec
    retriever_backend: Backend
    retriever_k: int = RETRIEVER_K
    sheet: Optional[RuleSheet] = None
    last_output: Optional[PlannerOutput] = None
    turns: int = 0

    @property
    def trace(self) -> TraceLog:
        return self.orchestrator.trace


def make_session(
    scenario: Scenario,
    planner_backend: Backend,
    retriever_backend: Backend,
    *,
    store: Optional[DocumentStore] = None,
    trace: Optional[TraceLog] = None,
    retriever_k: int = RETRIEVER_K,
) -> PlannerSession:
    if store is None:
        store = ingest(scenario.documents_map(), HashedBagOfWordsEmbedder())
    orch = Orchestrator(trace)
    session = PlannerSession(
        scenario=scenario,
        store=store,
        orchestrator=orch,
        planner=None,  # type: ignore[arg-type]
        retriever_backend=retriever_backend,
        retriever_k=retriever_k,
    )

    def handle_collect(payload: Any, task: TaskHandle) -> dict[str, Any]:
        del payload
        sheet = manager_collect(
            [u.first_name for u in scenario.users],
            store,
            retriever_backend,
            orchestrator=orch,
            parent=task,
            retriever_k=session.retriever_k,
        )
        session.sheet = sheet
        return sheet.to_dict()

    def handle_detect(payload: Any, task: TaskHandle) -> list[dict[str, Any]]:
        del payload, task
        from .conflicts import detect_conflicts

        return [c.to_dict() for c in detect_conflicts(scenario)]

    prompt = scenario_prompt(scenario) + "\n\n" + prompt_text("planner_format")
    session.planner = AgentSpec(
        name="planner",
        system_prompt=prompt,
        backend=planner_backend,
        tools=(COLLECT_RULES_TOOL, DETECT_CONFLICTS_TOOL),
        handlers={"collect_rules": handle_collect, "detect_conflicts": handle_detect},
        max_turns=PLANNER_MAX_TURNS,
    )
    return session


def _finish_output(session: PlannerSession, out: PlannerOutput) -> PlannerOutput:
    unresolved = session.sheet.unresolved_fields() if session.sheet else ()
    if unresolved:
        note = "Unresolved rule-sheet fields: " + ", ".join(unresolved) + "."
        explanation = f"{out.explanation} {note}".strip() if note not in out.explanation else out.explanation
        out = replace(out, explanation=explanation, unresolved_fields=unresolved)
    session.last_output = out
    session.turns += 1
    return out


def planner_respond(session: PlannerSession, query: str) -> PlannerOutput:
    """One user turn: reflect (first time), plan, and explain."""
    if not query.strip():
        raise ValueError("query must be non-empty")
    result = session.orchestrator.run_task(
        session.planner, Message(role=Role.USER, content=query)
    )
    return _finish_output(session, parse_planner_output(result.content))


def planner_feedback(session: PlannerSession, feedback: str) -> PlannerOutput:
    """A feedback turn revising the previous output; history retained."""
    if not feedback.strip():
        raise ValueError("feedback must be non-empty")
    if session.last_output is None:
        raise ValueError("feedback requires a prior planning turn")
    result = session.orchestrator.run_task(
        session.planner, Message(role=Role.USER, content=feedback)
    )
    return _finish_output(session, parse_planner_output(result.content))


# ---------------------------------------------------------------------------
# scripted planner backends


def _reference_output_for_days(
    scenario: Scenario, days: Sequence[Weekday]
) -> PlannerOutput:
    reference = scenario.reference
    if reference is None:
        raise ValueError(f"scenario {scenario.name!r} has no reference solution")
    by_day = {p.day: p for p in reference.plans}
    plans = tuple(by_day.get(day, Plan(day=day, actions=())) for day in days)
    conflict_day = {c.conflict_id: c.context.day for c in reference.conflicts}
    resolutions = tuple(
        r for r in reference.resolutions if conflict_day.get(r.conflict_id) in days
    )
    cited = sorted({rid for p in plans for a in p.actions for rid in a.rule_ids})
    day_names = ", ".join(d.title for d in days)
    if not cited:
        explanation = f"No rules apply to {day_names}; the plan is empty."
    else:
        explanation = (
            f"Plan for {day_names} under the {scenario.policy.variant.value} policy; "
            f"rules applied: {', '.join(cited)}."
        )
    return PlannerOutput(plans=plans, resolutions=resolutions, explanation=explanation)


class ReferencePlannerBackend:
    """Replays the scenario's reference solution through the full protocol.

    First planning turn requests the rule sheet; afterwards each user turn
    is answered from the reference plans for the days the query names. A
    summary follow-up re-states the rules cited by the previous answer.
    """

    def __init__(self, scenario: Scenario) -> None:
        self.scenario = scenario

    def _last_user_query(self, messages: Sequence[Message]) -> str:
        for m in reversed(messages):
            if m.role is Role.USER:
                return m.content
        return ""

    def _previous_output(self, messages: Sequence[Message]) -> Optional[PlannerOutput]:
        for m in reversed(messages):
            if m.role is Role.ASSISTANT and m.content.startswith("DONE: "):
                try:
                    return parse_planner_output(m.content[len("DONE: ") :])
                except PlanParseError:
                    return None
        return None

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        del tools
        collected = any(
            m.role is Role.TOOL
            and m.tool_call is not None
            and m.tool_call.tool_name == "collect_rules"
            for m in messages
        )
        if not collected:
            return json.dumps({"tool": "collect_rules", "payload": {}})
        query = self._last_user_query(messages).lower()
        prior = self._previous_output(messages)
        if prior is not None and ("summar" in query or "articulat" in query):
            cited = ", ".join(prior.cited_rule_ids()) or "none"
            out = replace(prior, explanation=f"Rules referred to: {cited}.")
            return "DONE: " + json.dumps(out.to_dict(), sort_keys=True)
        days = parse_query_days(query)
        out = _reference_output_for_days(self.scenario, days)
        return "DONE: " + json.dumps(out.to_dict(), sort_keys=True)


DOCUMENT_MARKER = "### Document: "


def inline_documents(scenario: Scenario) -> str:
    """Render all user documents as one prompt block."""
    parts = []
    for user_id, doc in scenario.documents:
        parts.append(f"{DOCUMENT_MARKER}{user_id}\n{doc}")
    return "\n".join(parts)


def monolithic_prompt(scenario: Scenario) -> str:
    """System prompt for the single-agent baseline: everything inline."""
    return prompt_text("monolithic").format(
        scenario_prompt=scenario_prompt(scenario),
        documents=inline_documents(scenario),
    )


def visible_rule_ids(scenario: Scenario, keep_fraction: float) -> frozenset[str]:
    """Rule ids still tagged after each document loses its tail."""
    visible: set[str] = set()
    for _, doc in scenario.documents:
        kept = doc[: int(len(doc) * keep_fraction)]
        visible.update(_TAG_RE.findall(kept))
    return frozenset(visible)


class TruncationPlannerBackend:
    """Baseline backend that loses the tail of every inlined document.

    Models the long-context failure mode: the reply is faithful to what
    survives truncation, so any action citing a rule whose tag fell off
    the end simply never appears, and the conflicts those rules seeded go
    unhandled.
    """

    def __init__(self, scenario: Scenario, keep_fraction: float = 2 / 3) -> None:
        if not 0 < keep_fraction <= 1:
            raise ValueError("keep_fraction must be in (0, 1]")
        self.scenario = scenario
        self.keep_fraction = keep_fraction

    def complete_raw(self, messages: Sequence[Message], tools: Sequence[ToolSchema]) -> str:
        del tools
        visible = visible_rule_ids(self.scenario, self.keep_fraction)
        query = ""
        for m in reversed(messages):
            if m.role is Role.USER:
                query = m.content
                break
        days = parse_query_days(query)
        full = _reference_output_for_days(self.scenario, days)
        plans = tuple(
            Plan(
                day=p.day,
                actions=tuple(a for a in p.actions if set(a.rule_ids) <= visible),
            )
            for p in full.plans
        )
        cited_conflicts = {cid for p in plans for a in p.actions for cid in a.conflict_ids}
        resolutions = tuple(
            r for r in full.resolutions if r.conflict_id in cited_conflicts
        )
        out = PlannerOutput(
            plans=plans,
            resolutions=resolutions,
            explanation=full.explanation,
        )
        return "DONE: " + json.dumps(out.to_dict(), sort_keys=True)


def run_monolithic_turn(
    scenario: Scenario,
    backend: Backend,
    memory: list[Message],
    query: str,
    *,
    trace: Optional[TraceLog] = None,
) -> PlannerOutput:
    """One baseline turn: a single agent, documents inline, no delegation."""
    if not query.strip():
        raise ValueError("query must be non-empty")
    agent = AgentSpec(
        name="monolithic",
        system_prompt=monolithic_prompt(scenario),
        backend=backend,
        memory=memory,
        max_turns=PLANNER_MAX_TURNS,
    )
    orch = Orchestrator(trace)
    result = orch.run_task(agent, Message(role=Role.USER, content=query))
    return parse_planner_output(result.content)


__all__ = [
    "ASK_RETRIEVER_TOOL",
    "COLLECT_RULES_TOOL",
    "DETECT_CONFLICTS_TOOL",
    "FIELDS",
    "FieldStatus",
    "ManagerEngine",
    "NO_ANSWER",
    "PLANNER_PROMPT_BY_TITLE",
    "PlanParseError",
    "PlannerOutput",
    "PlannerSession",
    "ReferencePlannerBackend",
    "ReferenceRetrieverBackend",
    "RetrieverAnswer",
    "RETRY_BUDGET",
    "RETRIEVER_K",
    "RULE_SHEET_TOOL",
    "RuleField",
    "RuleSheet",
    "SHEET_SCHEMA",
    "SheetSection",
    "TruncationPlannerBackend",
    "inline_documents",
    "make_session",
    "manager_collect",
    "monolithic_prompt",
    "parse_planner_output",
    "parse_query_days",
    "planner_feedback",
    "planner_respond",
    "question_for",
    "retriever_answer",
    "run_monolithic_turn",
    "scenario_prompt",
    "visible_rule_ids",
]
