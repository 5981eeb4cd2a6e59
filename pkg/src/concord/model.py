"""Shared domain model: users, rules, conflicts, resolutions, plans, scenarios.

Everything here is an immutable value type plus construction/validation and
JSON (de)serialization. Behavior lives in the sibling modules (conflict
engine, retrieval, agents); this module only says what the data *is*.

Times are minutes since midnight (integers), which keeps interval overlap
tests exact. Activity classes and constraint attributes are lowercase
strings so scenarios can introduce domain-specific vocabularies.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Mapping, Optional

MINUTES_PER_DAY = 1440


class Weekday(str, Enum):
    MON = "mon"
    TUE = "tue"
    WED = "wed"
    THU = "thu"
    FRI = "fri"
    SAT = "sat"
    SUN = "sun"

    @property
    def index(self) -> int:
        return _WEEKDAY_ORDER[self]

    @property
    def title(self) -> str:
        return self.value.capitalize()


_WEEKDAY_ORDER = {d: i for i, d in enumerate(Weekday)}

WEEKDAYS: tuple[Weekday, ...] = tuple(Weekday)
WORKWEEK: tuple[Weekday, ...] = WEEKDAYS[:5]


class RuleKind(str, Enum):
    SCHEDULE = "schedule"
    PREFERENCE = "preference"
    POLICY = "policy"


class Comparator(str, Enum):
    LE = "le"
    GE = "ge"
    EQ = "eq"


class ConflictKind(str, Enum):
    RESOURCE_CONTENTION = "resource_contention"
    CONSTRAINT_CONTRADICTION = "constraint_contradiction"
    SCHEDULE_OVERLAP = "schedule_overlap"


class PolicyVariant(str, Enum):
    ACTIVITY_PRIORITY = "activity_priority"
    ALPHABETICAL_FIRST_NAME = "alphabetical_first_name"
    ESCALATE_TO_DISCUSSION = "escalate_to_discussion"


class Outcome(str, Enum):
    WINNER = "winner"
    ESCALATED = "escalated"


# Workplace activity classes; scenarios may add their own lowercase classes.
CLIENT_CONSULTATION = "client_consultation"
TEAM_MEETING = "team_meeting"
BRAINSTORMING = "brainstorming"
OTHER = "other"


@dataclass(frozen=True)
class TimeWindow:
    """A window within one day; day=None means the window recurs every day."""

    start: int
    end: int
    day: Optional[Weekday] = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"start": self.start, "end": self.end}
        if self.day is not None:
            out["day"] = self.day.value
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "TimeWindow":
        day = Weekday(d["day"]) if d.get("day") is not None else None
        return TimeWindow(start=int(d["start"]), end=int(d["end"]), day=day)


@dataclass(frozen=True)
class ScheduleEntry:
    """One recurring commitment in a user's weekly schedule."""

    day: Weekday
    start: int
    end: int
    activity: str
    activity_class: str = OTHER
    resource: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "day": self.day.value,
            "start": self.start,
            "end": self.end,
            "activity": self.activity,
            "activity_class": self.activity_class,
        }
        if self.resource is not None:
            out["resource"] = self.resource
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "ScheduleEntry":
        return ScheduleEntry(
            day=Weekday(d["day"]),
            start=int(d["start"]),
            end=int(d["end"]),
            activity=d["activity"],
            activity_class=d.get("activity_class", OTHER),
            resource=d.get("resource"),
        )


#: Attributes whose values are physical quantities and must carry a unit tag.
PHYSICAL_ATTRIBUTES = frozenset({"temperature"})


@dataclass(frozen=True)
class Constraint:
    """A bound a user places on some attribute (optionally zone/time scoped)."""

    attribute: str
    comparator: Comparator
    value: float
    unit: str = ""
    zone: Optional[str] = None
    condition: Optional[TimeWindow] = None

    def allowed_interval(self) -> tuple[float, float]:
        """Closed interval of admissible values."""
        if self.comparator is Comparator.LE:
            return (float("-inf"), self.value)
        if self.comparator is Comparator.GE:
            return (self.value, float("inf"))
        return (self.value, self.value)

    def admits(self, value: float) -> bool:
        lo, hi = self.allowed_interval()
        return lo <= value <= hi

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "attribute": self.attribute,
            "comparator": self.comparator.value,
            "value": self.value,
        }
        if self.unit:
            out["unit"] = self.unit
        if self.zone is not None:
            out["zone"] = self.zone
        if self.condition is not None:
            out["condition"] = self.condition.to_dict()
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Constraint":
        cond = d.get("condition")
        return Constraint(
            attribute=d["attribute"],
            comparator=Comparator(d["comparator"]),
            value=float(d["value"]),
            unit=d.get("unit", ""),
            zone=d.get("zone"),
            condition=TimeWindow.from_dict(cond) if cond else None,
        )


@dataclass(frozen=True)
class ResolutionPolicy:
    """How a scenario decides conflicts.

    priority orders activity classes (highest first) for ACTIVITY_PRIORITY;
    resource_order lists resources best-first, used to reassign contention
    losers to the next resource down the list.
    """

    variant: PolicyVariant
    priority: tuple[str, ...] = ()
    tiebreak: Optional[PolicyVariant] = None
    resource_order: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"variant": self.variant.value}
        if self.priority:
            out["priority"] = list(self.priority)
        if self.tiebreak is not None:
            out["tiebreak"] = self.tiebreak.value
        if self.resource_order:
            out["resource_order"] = list(self.resource_order)
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "ResolutionPolicy":
        return ResolutionPolicy(
            variant=PolicyVariant(d["variant"]),
            priority=tuple(d.get("priority", ())),
            tiebreak=PolicyVariant(d["tiebreak"]) if d.get("tiebreak") else None,
            resource_order=tuple(d.get("resource_order", ())),
        )


@dataclass(frozen=True)
class Predicate:
    """Machine-checkable plan satisfaction test, serializable to JSON.

    Kinds:
      action      -- some action matches all given filters
      absence     -- no action matches the filters
      setting     -- numeric-valued actions on `zone` matching the filters all
                     satisfy (comparator, value); with require=True at least
                     one such action must exist
      all / any   -- boolean combinators over `of`
      no_overlap  -- no two actions grant the same resource at overlapping
                     times on the same day
      no_conflicting_settings -- no two overlapping same-zone actions carry
                     different numeric values

    Filters (used by action/absence/setting): user, day, overlaps window,
    contains keywords (case-insensitive, all must appear), resource.
    """

    kind: str
    user: Optional[str] = None
    day: Optional[Weekday] = None
    overlaps: Optional[tuple[int, int]] = None
    contains: tuple[str, ...] = ()
    resource: Optional[str] = None
    zone: Optional[str] = None
    comparator: Optional[Comparator] = None
    value: Optional[float] = None
    require: bool = True
    of: tuple["Predicate", ...] = ()

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind}
        if self.user is not None:
            out["user"] = self.user
        if self.day is not None:
            out["day"] = self.day.value
        if self.overlaps is not None:
            out["overlaps"] = list(self.overlaps)
        if self.contains:
            out["contains"] = list(self.contains)
        if self.resource is not None:
            out["resource"] = self.resource
        if self.zone is not None:
            out["zone"] = self.zone
        if self.comparator is not None:
            out["comparator"] = self.comparator.value
        if self.value is not None:
            out["value"] = self.value
        if not self.require:
            out["require"] = False
        if self.of:
            out["of"] = [p.to_dict() for p in self.of]
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Predicate":
        overlaps = d.get("overlaps")
        return Predicate(
            kind=d["kind"],
            user=d.get("user"),
            day=Weekday(d["day"]) if d.get("day") else None,
            overlaps=(int(overlaps[0]), int(overlaps[1])) if overlaps else None,
            contains=tuple(d.get("contains", ())),
            resource=d.get("resource"),
            zone=d.get("zone"),
            comparator=Comparator(d["comparator"]) if d.get("comparator") else None,
            value=float(d["value"]) if d.get("value") is not None else None,
            require=bool(d.get("require", True)),
            of=tuple(Predicate.from_dict(p) for p in d.get("of", ())),
        )


_KIND_PAYLOAD = {
    RuleKind.SCHEDULE: ScheduleEntry,
    RuleKind.PREFERENCE: Constraint,
    RuleKind.POLICY: ResolutionPolicy,
}


@dataclass(frozen=True)
class Rule:
    """A single user-owned rule: natural-language text plus optional
    structured payload and an optional machine-checkable satisfaction test."""

    rule_id: str
    owner: str
    kind: RuleKind
    text: str
    payload: Optional[Any] = None
    checker: Optional[Predicate] = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "rule_id": self.rule_id,
            "owner": self.owner,
            "kind": self.kind.value,
            "text": self.text,
        }
        if self.payload is not None:
            out["payload"] = self.payload.to_dict()
        if self.checker is not None:
            out["checker"] = self.checker.to_dict()
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Rule":
        kind = RuleKind(d["kind"])
        payload = None
        if d.get("payload") is not None:
            payload = _KIND_PAYLOAD[kind].from_dict(d["payload"])
        checker = Predicate.from_dict(d["checker"]) if d.get("checker") else None
        return Rule(
            rule_id=d["rule_id"],
            owner=d["owner"],
            kind=kind,
            text=d["text"],
            payload=payload,
            checker=checker,
        )


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    first_name: str
    rules: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "user_id": self.user_id,
            "first_name": self.first_name,
            "rules": list(self.rules),
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "UserProfile":
        return UserProfile(
            user_id=d["user_id"],
            first_name=d["first_name"],
            rules=tuple(d.get("rules", ())),
        )


@dataclass(frozen=True)
class ConflictContext:
    """Where and over what a conflict happens.

    classes maps participant user_id -> activity class (contention/overlap);
    bounds maps participant user_id -> [lo, hi] admissible value interval
    (constraint contradictions).
    """

    day: Weekday
    start: int
    end: int
    resource: Optional[str] = None
    activity_class: Optional[str] = None
    attribute: Optional[str] = None
    zone: Optional[str] = None
    classes: tuple[tuple[str, str], ...] = ()
    bounds: tuple[tuple[str, tuple[float, float]], ...] = ()

    def classes_map(self) -> dict[str, str]:
        return dict(self.classes)

    def bounds_map(self) -> dict[str, tuple[float, float]]:
        return dict(self.bounds)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "day": self.day.value,
            "start": self.start,
            "end": self.end,
        }
        if self.resource is not None:
            out["resource"] = self.resource
        if self.activity_class is not None:
            out["activity_class"] = self.activity_class
        if self.attribute is not None:
            out["attribute"] = self.attribute
        if self.zone is not None:
            out["zone"] = self.zone
        if self.classes:
            out["classes"] = {u: c for u, c in self.classes}
        if self.bounds:
            # Unbounded ends become null so the JSON stays strict.
            out["bounds"] = {
                u: [None if lo == float("-inf") else lo, None if hi == float("inf") else hi]
                for u, (lo, hi) in self.bounds
            }
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "ConflictContext":
        return ConflictContext(
            day=Weekday(d["day"]),
            start=int(d["start"]),
            end=int(d["end"]),
            resource=d.get("resource"),
            activity_class=d.get("activity_class"),
            attribute=d.get("attribute"),
            zone=d.get("zone"),
            classes=tuple(sorted((u, c) for u, c in d.get("classes", {}).items())),
            bounds=tuple(
                sorted(
                    (
                        u,
                        (
                            float("-inf") if b[0] is None else float(b[0]),
                            float("inf") if b[1] is None else float(b[1]),
                        ),
                    )
                    for u, b in d.get("bounds", {}).items()
                )
            ),
        )


@dataclass(frozen=True)
class Conflict:
    conflict_id: str
    kind: ConflictKind
    participants: frozenset[str]
    rule_ids: frozenset[str]
    context: ConflictContext

    def to_dict(self) -> dict[str, Any]:
        return {
            "conflict_id": self.conflict_id,
            "kind": self.kind.value,
            "participants": sorted(self.participants),
            "rule_ids": sorted(self.rule_ids),
            "context": self.context.to_dict(),
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Conflict":
        return Conflict(
            conflict_id=d["conflict_id"],
            kind=ConflictKind(d["kind"]),
            participants=frozenset(d["participants"]),
            rule_ids=frozenset(d["rule_ids"]),
            context=ConflictContext.from_dict(d["context"]),
        )


#: Reassignment note used when no alternative resource remains.
SUGGEST_ANOTHER_TIME = "suggest another time"


@dataclass(frozen=True)
class Reassignment:
    resource: Optional[str]
    note: str

    def to_dict(self) -> dict[str, Any]:
        return {"resource": self.resource, "note": self.note}

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Reassignment":
        return Reassignment(resource=d.get("resource"), note=d["note"])


@dataclass(frozen=True)
class Resolution:
    conflict_id: str
    policy_applied: PolicyVariant
    outcome: Outcome
    winner: Optional[str] = None
    reassignments: tuple[tuple[str, Reassignment], ...] = ()
    rationale: str = ""

    def reassignments_map(self) -> dict[str, Reassignment]:
        return dict(self.reassignments)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "conflict_id": self.conflict_id,
            "policy_applied": self.policy_applied.value,
            "outcome": self.outcome.value,
            "rationale": self.rationale,
        }
        if self.winner is not None:
            out["winner"] = self.winner
        if self.reassignments:
            out["reassignments"] = {u: r.to_dict() for u, r in self.reassignments}
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Resolution":
        return Resolution(
            conflict_id=d["conflict_id"],
            policy_applied=PolicyVariant(d["policy_applied"]),
            outcome=Outcome(d["outcome"]),
            winner=d.get("winner"),
            reassignments=tuple(
                sorted(
                    (u, Reassignment.from_dict(r))
                    for u, r in d.get("reassignments", {}).items()
                )
            ),
            rationale=d.get("rationale", ""),
        )


@dataclass(frozen=True)
class PlanAction:
    """One step in a daily plan.

    resource/value are structured mirrors of what the description says, so
    validation does not have to parse prose: resource is the granted room,
    zone, or attendant; value is a numeric setting (e.g. temperature).
    """

    start: int
    end: int
    description: str
    users: tuple[str, ...] = ()
    rule_ids: tuple[str, ...] = ()
    conflict_ids: tuple[str, ...] = ()
    resource: Optional[str] = None
    value: Optional[float] = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "start": self.start,
            "end": self.end,
            "description": self.description,
            "users": list(self.users),
        }
        if self.rule_ids:
            out["rule_ids"] = list(self.rule_ids)
        if self.conflict_ids:
            out["conflict_ids"] = list(self.conflict_ids)
        if self.resource is not None:
            out["resource"] = self.resource
        if self.value is not None:
            out["value"] = self.value
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "PlanAction":
        return PlanAction(
            start=int(d["start"]),
            end=int(d["end"]),
            description=d["description"],
            users=tuple(d.get("users", ())),
            rule_ids=tuple(d.get("rule_ids", ())),
            conflict_ids=tuple(d.get("conflict_ids", ())),
            resource=d.get("resource"),
            value=float(d["value"]) if d.get("value") is not None else None,
        )


@dataclass(frozen=True)
class Plan:
    day: Weekday
    actions: tuple[PlanAction, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"day": self.day.value, "actions": [a.to_dict() for a in self.actions]}

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Plan":
        return Plan(
            day=Weekday(d["day"]),
            actions=tuple(PlanAction.from_dict(a) for a in d.get("actions", ())),
        )


@dataclass(frozen=True)
class ReferenceSolution:
    plans: tuple[Plan, ...]
    conflicts: tuple[Conflict, ...] = ()
    resolutions: tuple[Resolution, ...] = ()

    def plan_for(self, day: Weekday) -> Optional[Plan]:
        for plan in self.plans:
            if plan.day is day:
                return plan
        return None

    def resolution_for(self, conflict_id: str) -> Optional[Resolution]:
        for res in self.resolutions:
            if res.conflict_id == conflict_id:
                return res
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "plans": [p.to_dict() for p in self.plans],
            "conflicts": [c.to_dict() for c in self.conflicts],
            "resolutions": [r.to_dict() for r in self.resolutions],
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "ReferenceSolution":
        return ReferenceSolution(
            plans=tuple(Plan.from_dict(p) for p in d.get("plans", ())),
            conflicts=tuple(Conflict.from_dict(c) for c in d.get("conflicts", ())),
            resolutions=tuple(Resolution.from_dict(r) for r in d.get("resolutions", ())),
        )


@dataclass(frozen=True)
class Scenario:
    name: str
    users: tuple[UserProfile, ...]
    rules: tuple[Rule, ...]
    policy: ResolutionPolicy
    documents: tuple[tuple[str, str], ...] = ()  # (user_id, prose document)
    reference: Optional[ReferenceSolution] = None
    bundled: bool = False
    notes: str = ""

    def user_by_id(self, user_id: str) -> Optional[UserProfile]:
        for u in self.users:
            if u.user_id == user_id:
                return u
        return None

    def rule_by_id(self, rule_id: str) -> Optional[Rule]:
        for r in self.rules:
            if r.rule_id == rule_id:
                return r
        return None

    def first_names(self) -> dict[str, str]:
        return {u.user_id: u.first_name for u in self.users}

    def documents_map(self) -> dict[str, str]:
        return dict(self.documents)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "users": [u.to_dict() for u in self.users],
            "rules": [r.to_dict() for r in self.rules],
            "policy": self.policy.to_dict(),
            "documents": {u: doc for u, doc in self.documents},
            "bundled": self.bundled,
        }
        if self.reference is not None:
            out["reference"] = self.reference.to_dict()
        if self.notes:
            out["notes"] = self.notes
        return out

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "Scenario":
        ref = d.get("reference")
        return Scenario(
            name=d["name"],
            users=tuple(UserProfile.from_dict(u) for u in d["users"]),
            rules=tuple(Rule.from_dict(r) for r in d["rules"]),
            policy=ResolutionPolicy.from_dict(d["policy"]),
            documents=tuple(sorted(d.get("documents", {}).items())),
            reference=ReferenceSolution.from_dict(ref) if ref else None,
            bundled=bool(d.get("bundled", False)),
            notes=d.get("notes", ""),
        )


# ---------------------------------------------------------------------------
# Validation


def _check_window(errors: list[str], where: str, start: int, end: int) -> None:
    if not (0 <= start < end <= MINUTES_PER_DAY):
        errors.append(f"{where}: invalid window [{start}, {end}) (need 0 <= start < end <= 1440)")


def validate_scenario(scenario: Scenario) -> list[str]:
    """Return one error string per invariant violation; empty means valid."""
    errors: list[str] = []
    user_ids = [u.user_id for u in scenario.users]
    user_set = set(user_ids)

    if len(user_set) != len(user_ids):
        errors.append("users: duplicate user_id")
    for u in scenario.users:
        if not u.first_name:
            errors.append(f"users/{u.user_id}: empty first_name")

    rule_ids = [r.rule_id for r in scenario.rules]
    rule_set = set(rule_ids)
    if len(rule_set) != len(rule_ids):
        errors.append("rules: duplicate rule_id")

    classes_seen: set[str] = set()
    for r in scenario.rules:
        where = f"rules/{r.rule_id}"
        if r.owner not in user_set:
            errors.append(f"{where}: owner {r.owner!r} not among scenario users")
        expected = _KIND_PAYLOAD[r.kind]
        if r.payload is not None and not isinstance(r.payload, expected):
            errors.append(f"{where}: payload type {type(r.payload).__name__} does not match kind {r.kind.value}")
        if isinstance(r.payload, ScheduleEntry):
            _check_window(errors, where, r.payload.start, r.payload.end)
            classes_seen.add(r.payload.activity_class)
        if isinstance(r.payload, Constraint):
            if r.payload.attribute in PHYSICAL_ATTRIBUTES and not r.payload.unit:
                errors.append(f"{where}: physical attribute {r.payload.attribute!r} missing unit tag")
            if r.payload.condition is not None:
                _check_window(errors, where, r.payload.condition.start, r.payload.condition.end)
        if scenario.bundled and r.checker is None:
            errors.append(f"{where}: bundled scenario rule missing checker")

    policy = scenario.policy
    if policy.variant is PolicyVariant.ACTIVITY_PRIORITY:
        if len(set(policy.priority)) != len(policy.priority):
            errors.append("policy: priority list contains duplicates")
        missing = classes_seen - set(policy.priority)
        if missing:
            errors.append(f"policy: priority list does not cover activity classes {sorted(missing)}")

    doc_users = [u for u, _ in scenario.documents]
    if scenario.documents and sorted(doc_users) != sorted(user_ids):
        errors.append("documents: keys do not match scenario users one-to-one")

    if scenario.bundled:
        if len(scenario.users) != 3:
            errors.append(f"bundled scenario must have 3 users, found {len(scenario.users)}")
        if len(scenario.rules) != 60:
            errors.append(f"bundled scenario must have 60 rules, found {len(scenario.rules)}")
        if scenario.reference is None:
            errors.append("bundled scenario missing reference solution")
        elif len(scenario.reference.conflicts) != 12:
            errors.append(
                f"bundled scenario must have 12 reference conflicts, found {len(scenario.reference.conflicts)}"
            )

    ref = scenario.reference
    if ref is not None:
        for plan in ref.plans:
            where = f"reference/plans/{plan.day.value}"
            starts = [a.start for a in plan.actions]
            if starts != sorted(starts):
                errors.append(f"{where}: actions not sorted by start time")
            for a in plan.actions:
                _check_window(errors, where, a.start, a.end)
                for uid in a.users:
                    if uid not in user_set:
                        errors.append(f"{where}: unknown user {uid!r}")
                for rid in a.rule_ids:
                    if rid not in rule_set:
                        errors.append(f"{where}: unknown rule {rid!r}")
        known_conflicts = {c.conflict_id for c in ref.conflicts}
        for c in ref.conflicts:
            where = f"reference/conflicts/{c.conflict_id}"
            if len(c.participants) < 2:
                errors.append(f"{where}: fewer than 2 participants")
            owners = set()
            for rid in c.rule_ids:
                rule = scenario.rule_by_id(rid)
                if rule is None:
                    errors.append(f"{where}: unknown rule {rid!r}")
                else:
                    owners.add(rule.owner)
            if len(owners) < 2:
                errors.append(f"{where}: rules owned by fewer than 2 distinct users")
            for uid in c.participants:
                if uid not in user_set:
                    errors.append(f"{where}: unknown participant {uid!r}")
        for res in ref.resolutions:
            where = f"reference/resolutions/{res.conflict_id}"
            if res.conflict_id not in known_conflicts:
                errors.append(f"{where}: resolution for unknown conflict")
            if res.outcome is Outcome.WINNER:
                conflict = next((c for c in ref.conflicts if c.conflict_id == res.conflict_id), None)
                if conflict is not None and res.winner not in conflict.participants:
                    errors.append(f"{where}: winner {res.winner!r} not a participant")
            if res.policy_applied is PolicyVariant.ESCALATE_TO_DISCUSSION and res.outcome is not Outcome.ESCALATED:
                errors.append(f"{where}: escalation policy requires escalated outcome")

    return errors


__all__ = [
    "MINUTES_PER_DAY",
    "Weekday",
    "WEEKDAYS",
    "WORKWEEK",
    "RuleKind",
    "Comparator",
    "ConflictKind",
    "PolicyVariant",
    "Outcome",
    "CLIENT_CONSULTATION",
    "TEAM_MEETING",
    "BRAINSTORMING",
    "OTHER",
    "TimeWindow",
    "ScheduleEntry",
    "PHYSICAL_ATTRIBUTES",
    "Constraint",
    "ResolutionPolicy",
    "Predicate",
    "Rule",
    "UserProfile",
    "ConflictContext",
    "Conflict",
    "SUGGEST_ANOTHER_TIME",
    "Reassignment",
    "Resolution",
    "PlanAction",
    "Plan",
    "ReferenceSolution",
    "Scenario",
    "validate_scenario",
]
