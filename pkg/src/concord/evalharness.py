"""Scores plans produced under two conditions: one agent versus the pipeline.

For each scenario and trial, the harness asks for the five weekday plans,
joins them into a week, and scores the week with the plan validator:
retrieval is the share of rules whose checkers are satisfied, conflict is
the share of seeded conflicts resolved consistently with the scenario
policy. Results average across trials and land in a JSON report plus a
flat CSV table.

Scripted backends make runs bit-reproducible; the remote backend is
opt-in through an explicit config and is never exercised by tests.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from statistics import fmean
from typing import Any, Mapping, Optional, Sequence

from .agents import (
    DAY_BY_NAME,
    PlanParseError,
    ReferencePlannerBackend,
    ReferenceRetrieverBackend,
    TruncationPlannerBackend,
    make_session,
    planner_respond,
    run_monolithic_turn,
)
from .conflicts import detect_conflicts, validate_plan
from .gateway import Backend, Message, RemoteBackend, RemoteConfig
from .model import Plan, Scenario, WORKWEEK, Weekday
from .scenarios import BUNDLED_NAMES, load_bundled

DAY_TITLES = {day: name.capitalize() for name, day in DAY_BY_NAME.items()}

DEFAULT_KEEP_FRACTION = 2 / 3


class Condition(str, Enum):
    MONOLITHIC = "mono"
    MULTI_AGENT = "map"


BACKEND_KINDS = ("reference", "truncation", "remote")


@dataclass(frozen=True)
class BackendConfig:
    """How planning turns are answered: scripted replay or a live model."""

    kind: str = "reference"
    keep_fraction: float = DEFAULT_KEEP_FRACTION
    endpoint: str = ""
    model: str = ""
    credential_env: str = "LLM_API_KEY"
    temperature: float = 0.0
    timeout: float = 60.0
    max_retries: int = 3

    def __post_init__(self) -> None:
        if self.kind not in BACKEND_KINDS:
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "remote" and not (self.endpoint and self.model):
            raise ValueError("remote backend needs endpoint and model")

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "keep_fraction": self.keep_fraction,
            "endpoint": self.endpoint,
            "model": self.model,
            "credential_env": self.credential_env,
            "temperature": self.temperature,
            "timeout": self.timeout,
            "max_retries": self.max_retries,
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "BackendConfig":
        return BackendConfig(
            kind=d.get("kind", "reference"),
            keep_fraction=float(d.get("keep_fraction", DEFAULT_KEEP_FRACTION)),
            endpoint=d.get("endpoint", ""),
            model=d.get("model", ""),
            credential_env=d.get("credential_env", "LLM_API_KEY"),
            temperature=float(d.get("temperature", 0.0)),
            timeout=float(d.get("timeout", 60.0)),
            max_retries=int(d.get("max_retries", 3)),
        )


def load_backend_config(spec: str) -> BackendConfig:
    """A bare kind name, or a path to a JSON file of BackendConfig fields."""
    if spec in BACKEND_KINDS:
        return BackendConfig(kind=spec)
    with open(spec, encoding="utf-8") as fh:
        return BackendConfig.from_dict(json.load(fh))


@dataclass(frozen=True)
class EvalConfig:
    scenarios: tuple[str, ...] = tuple(BUNDLED_NAMES)
    condition: Condition = Condition.MULTI_AGENT
    trials: int = 3
    weekdays: tuple[Weekday, ...] = tuple(WORKWEEK)
    backend: BackendConfig = field(default_factory=BackendConfig)

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.scenarios:
            raise ValueError("at least one scenario is required")
        if not self.weekdays:
            raise ValueError("at least one weekday is required")


@dataclass(frozen=True)
class TrialResult:
    trial: int
    retrieval_pct: float
    conflict_pct: float
    satisfied: int
    resolved: int
    parse_errors: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "trial": self.trial,
            "retrieval_pct": self.retrieval_pct,
            "conflict_pct": self.conflict_pct,
            "satisfied": self.satisfied,
            "resolved": self.resolved,
            "parse_errors": list(self.parse_errors),
        }


@dataclass(frozen=True)
class ScenarioResult:
    scenario: str
    condition: Condition
    retrieval_pct: float
    conflict_pct: float
    trials: tuple[TrialResult, ...]
    instances: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario": self.scenario,
            "condition": self.condition.value,
            "retrieval_pct": self.retrieval_pct,
            "conflict_pct": self.conflict_pct,
            "trials": [t.to_dict() for t in self.trials],
            "instances": self.instances,
        }


@dataclass(frozen=True)
class EvalReport:
    results: tuple[ScenarioResult, ...]

    @property
    def instances(self) -> int:
        return sum(r.instances for r in self.results)

    def result_for(self, scenario: str, condition: Condition) -> ScenarioResult:
        for r in self.results:
            if r.scenario == scenario and r.condition is condition:
                return r
        raise KeyError(f"no result for {scenario!r}/{condition.value}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "instances": self.instances,
            "results": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def planner_backend_for(config: BackendConfig, scenario: Scenario, condition: Condition) -> Backend:
    if config.kind == "remote":
        return RemoteBackend(
            RemoteConfig(
                endpoint=config.endpoint,
                model=config.model,
                credential_env=config.credential_env,
                temperature=config.temperature,
                timeout=config.timeout,
                max_retries=config.max_retries,
            )
        )
    if condition is Condition.MONOLITHIC:
        # the scripted single-agent baseline answers from what survives in
        # its inlined context: everything for "reference", a truncated
        # prefix per document for "truncation"
        keep = 1.0 if config.kind == "reference" else config.keep_fraction
        return TruncationPlannerBackend(scenario, keep_fraction=keep)
    return ReferencePlannerBackend(scenario)


def retriever_backend_for(config: BackendConfig, scenario: Scenario) -> Backend:
    if config.kind == "remote":
        return RemoteBackend(
            RemoteConfig(
                endpoint=config.endpoint,
                model=config.model,
                credential_env=config.credential_env,
                temperature=config.temperature,
                timeout=config.timeout,
                max_retries=config.max_retries,
            )
        )
    return ReferenceRetrieverBackend(scenario)


def _week_query(day: Weekday) -> str:
    return f"Provide the plan for {DAY_TITLES[day]}."


def _collect_week(
    scenario: Scenario,
    condition: Condition,
    backend_config: BackendConfig,
    weekdays: Sequence[Weekday],
) -> tuple[list[Plan], list[str]]:
    plans: list[Plan] = []
    errors: list[str] = []
    planner = planner_backend_for(backend_config, scenario, condition)
    if condition is Condition.MULTI_AGENT:
        session = make_session(
            scenario, planner, retriever_backend_for(backend_config, scenario)
        )
        for day in weekdays:
            try:
                out = planner_respond(session, _week_query(day))
                plans.extend(out.plans)
            except PlanParseError:
                errors.append(day.value)
                plans.append(Plan(day=day, actions=()))
    else:
        memory: list[Message] = []
        for day in weekdays:
            try:
                out = run_monolithic_turn(scenario, planner, memory, _week_query(day))
                plans.extend(out.plans)
            except PlanParseError:
                errors.append(day.value)
                plans.append(Plan(day=day, actions=()))
    return plans, errors


def evaluate_scenario(
    scenario: Scenario,
    condition: Condition,
    *,
    trials: int = 3,
    weekdays: Sequence[Weekday] = WORKWEEK,
    backend: Optional[BackendConfig] = None,
    label: Optional[str] = None,
) -> ScenarioResult:
    """Run one scenario under one condition and average across trials."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    backend_config = backend or BackendConfig()
    total_rules = len(scenario.rules)
    if scenario.reference is not None and scenario.reference.conflicts:
        total_conflicts = len(scenario.reference.conflicts)
    else:
        total_conflicts = len(detect_conflicts(scenario))
    trial_results = []
    for trial in range(1, trials + 1):
        plans, errors = _collect_week(scenario, condition, backend_config, weekdays)
        report = validate_plan(plans, scenario)
        satisfied = len(report.satisfied_rule_ids)
        resolved = len(report.resolved_conflict_ids)
        trial_results.append(
            TrialResult(
                trial=trial,
                retrieval_pct=100.0 * satisfied / total_rules if total_rules else 0.0,
                conflict_pct=100.0 * resolved / total_conflicts if total_conflicts else 100.0,
                satisfied=satisfied,
                resolved=resolved,
                parse_errors=tuple(errors),
            )
        )
    return ScenarioResult(
        scenario=label or scenario.name,
        condition=condition,
        retrieval_pct=fmean(t.retrieval_pct for t in trial_results),
        conflict_pct=fmean(t.conflict_pct for t in trial_results),
        trials=tuple(trial_results),
        instances=trials * len(weekdays),
    )


def run_condition(config: EvalConfig) -> EvalReport:
    """Evaluate every configured scenario under the configured condition."""
    results = []
    for name in config.scenarios:
        scenario = load_bundled(name)
        results.append(
            evaluate_scenario(
                scenario,
                config.condition,
                trials=config.trials,
                weekdays=config.weekdays,
                backend=config.backend,
                label=name,
            )
        )
    return EvalReport(results=tuple(results))


def run_full(
    scenarios: Sequence[str] = BUNDLED_NAMES,
    *,
    trials: int = 3,
    weekdays: Sequence[Weekday] = WORKWEEK,
    backend: Optional[BackendConfig] = None,
) -> EvalReport:
    """Both conditions over the given scenarios, merged into one report."""
    backend_config = backend or BackendConfig(kind="truncation")
    results = []
    for condition in (Condition.MONOLITHIC, Condition.MULTI_AGENT):
        part = run_condition(
            EvalConfig(
                scenarios=tuple(scenarios),
                condition=condition,
                trials=trials,
                weekdays=tuple(weekdays),
                backend=backend_config,
            )
        )
        results.extend(part.results)
    return EvalReport(results=tuple(results))


def report_csv(report: EvalReport) -> str:
    """One row per (scenario, condition, metric); stable order and format."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "condition", "metric", "value"])
    rows = []
    for r in report.results:
        rows.append((r.scenario, r.condition.value, "retrieval_pct", r.retrieval_pct))
        rows.append((r.scenario, r.condition.value, "conflict_pct", r.conflict_pct))
    for scenario, condition, metric, value in sorted(rows):
        writer.writerow([scenario, condition, metric, f"{value:.2f}"])
    return buf.getvalue()


def emit_report(report: EvalReport, json_path: str, csv_path: str) -> None:
    """Write report.json and report.csv; identical bytes for equal reports."""
    with open(json_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(report_csv(report))


__all__ = [
    "BACKEND_KINDS",
    "BackendConfig",
    "Condition",
    "DAY_TITLES",
    "DEFAULT_KEEP_FRACTION",
    "EvalConfig",
    "EvalReport",
    "ScenarioResult",
    "TrialResult",
    "emit_report",
    "evaluate_scenario",
    "load_backend_config",
    "planner_backend_for",
    "report_csv",
    "retriever_backend_for",
    "run_condition",
    "run_full",
]
