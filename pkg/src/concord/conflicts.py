"""Deterministic conflict detection, policy resolution, and plan validation.

Detection works purely on structured rule payloads (no text parsing) and is
pairwise between users: a conflict is a maximal contiguous time region on one
day where two users' rules cannot both hold. Candidate regions that merely
touch do not merge; intervals are half-open [start, end) minutes.

Three kinds are recognized:

* resource contention: two schedule entries claim the same named resource at
  overlapping times;
* schedule overlap: two resource-free entries of the same activity class
  (other than the catch-all "other") collide, e.g. two requests for the one
  shared attendant;
* constraint contradiction: two numeric constraints on the same attribute,
  with compatible zones and the same unit, admit no common value while both
  are in force.

resolve() applies a scenario's policy to a single conflict and is total for
well-formed inputs; inputs a policy cannot rank raise PolicyInapplicable.
validate_plan() scores a proposed week of plans against the scenario: which
rule checkers pass, which detected conflicts the plans actively violate, and
which they resolve in a policy-consistent way.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence

from .checkers import satisfies, windows_overlap
from .model import (
    OTHER,
    Comparator,
    Conflict,
    ConflictContext,
    ConflictKind,
    Constraint,
    Outcome,
    Plan,
    PlanAction,
    PolicyVariant,
    Reassignment,
    Resolution,
    ResolutionPolicy,
    Rule,
    RuleKind,
    Scenario,
    ScheduleEntry,
    SUGGEST_ANOTHER_TIME,
    Weekday,
    WEEKDAYS,
)


class PolicyInapplicable(ValueError):
    """The resolution policy cannot rank the participants of a conflict."""


class MissingChecker(ValueError):
    """A rule without a machine-checkable predicate turned up in scoring."""


_KIND_PREFIX = {
    ConflictKind.RESOURCE_CONTENTION: "rc",
    ConflictKind.SCHEDULE_OVERLAP: "so",
    ConflictKind.CONSTRAINT_CONTRADICTION: "cc",
}


def _slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_") or "x"


@dataclass(frozen=True)
class _Candidate:
    start: int
    end: int
    rules: frozenset[str]
    # rule_id -> (owner, detail) where detail is an activity class or an
    # allowed-value interval, depending on the conflict kind.
    info: tuple[tuple[str, tuple[str, Any]], ...]


def _merge_candidates(cands: list[_Candidate]) -> list[_Candidate]:
    """Merge strictly overlapping candidates into maximal regions."""
    cands = sorted(cands, key=lambda c: (c.start, c.end, sorted(c.rules)))
    merged: list[_Candidate] = []
    for cand in cands:
        if merged and cand.start < merged[-1].end:
            prev = merged[-1]
            merged[-1] = _Candidate(
                start=prev.start,
                end=max(prev.end, cand.end),
                rules=prev.rules | cand.rules,
                info=tuple(dict(list(cand.info) + list(prev.info)).items()),
            )
        else:
            merged.append(cand)
    return merged


def _schedule_payloads(scenario: Scenario) -> list[tuple[Rule, ScheduleEntry]]:
    return [
        (r, r.payload)
        for r in scenario.rules
        if r.kind is RuleKind.SCHEDULE and isinstance(r.payload, ScheduleEntry)
    ]


def _constraint_payloads(scenario: Scenario) -> list[tuple[Rule, Constraint]]:
    return [
        (r, r.payload)
        for r in scenario.rules
        if r.kind is RuleKind.PREFERENCE and isinstance(r.payload, Constraint)
    ]


def _constraint_window(c: Constraint, day: Weekday) -> Optional[tuple[int, int]]:
    """The window a constraint is in force on the given day, if any."""
    if c.condition is None:
        return (0, 1440)
    if c.condition.day is not None and c.condition.day is not day:
        return None
    return (c.condition.start, c.condition.end)


def _zones_compatible(a: Optional[str], b: Optional[str]) -> bool:
    return a is None or b is None or a == b


def _intervals_disjoint(a: tuple[float, float], b: tuple[float, float]) -> bool:
    return max(a[0], b[0]) > min(a[1], b[1])


def detect_conflicts(
    scenario: Scenario,
    horizon: Iterable[Weekday] = WEEKDAYS,
) -> tuple[Conflict, ...]:
    """All pairwise conflicts implied by the scenario's structured rules.

    horizon restricts which weekdays are examined (the evaluation harness
    plans Monday through Friday only). Output order and conflict_ids are
    deterministic functions of the rules, so repeated runs over the same
    scenario agree byte for byte, and shuffling the rule list does not
    change the result.
    """
    days = set(horizon)
    groups: dict[tuple, list[_Candidate]] = {}

    schedules = _schedule_payloads(scenario)
    for i, (ra, ea) in enumerate(schedules):
        for rb, eb in schedules[i + 1 :]:
            if ra.owner == rb.owner or ea.day is not eb.day or ea.day not in days:
                continue
            start = max(ea.start, eb.start)
            end = min(ea.end, eb.end)
            if start >= end:
                continue
            pair = frozenset({ra.owner, rb.owner})
            if ea.resource is not None and ea.resource == eb.resource:
                kind = ConflictKind.RESOURCE_CONTENTION
                key = ("resource", ea.resource)
            elif (
                ea.resource is None
                and eb.resource is None
                and ea.activity_class == eb.activity_class
                and ea.activity_class != OTHER
            ):
                kind = ConflictKind.SCHEDULE_OVERLAP
                key = ("class", ea.activity_class)
            else:
                continue
            cand = _Candidate(
                start=start,
                end=end,
                rules=frozenset({ra.rule_id, rb.rule_id}),
                info=(
                    (ra.rule_id, (ra.owner, ea.activity_class)),
                    (rb.rule_id, (rb.owner, eb.activity_class)),
                ),
            )
            groups.setdefault((kind, ea.day, pair, key), []).append(cand)

    constraints = _constraint_payloads(scenario)
    for i, (ra, ca) in enumerate(constraints):
        for rb, cb in constraints[i + 1 :]:
            if ra.owner == rb.owner:
                continue
            if ca.attribute != cb.attribute or ca.unit != cb.unit:
                continue
            if not _zones_compatible(ca.zone, cb.zone):
                continue
            if not _intervals_disjoint(ca.allowed_interval(), cb.allowed_interval()):
                continue
            zone = ca.zone if ca.zone is not None else cb.zone
            for day in WEEKDAYS:
                if day not in days:
                    continue
                wa = _constraint_window(ca, day)
                wb = _constraint_window(cb, day)
                if wa is None or wb is None:
                    continue
                start = max(wa[0], wb[0])
                end = min(wa[1], wb[1])
                if start >= end:
                    continue
                pair = frozenset({ra.owner, rb.owner})
                cand = _Candidate(
                    start=start,
                    end=end,
                    rules=frozenset({ra.rule_id, rb.rule_id}),
                    info=(
                        (ra.rule_id, (ra.owner, ca.allowed_interval())),
                        (rb.rule_id, (rb.owner, cb.allowed_interval())),
                    ),
                )
                key = ("attr", ca.attribute, zone)
                groups.setdefault(
                    (ConflictKind.CONSTRAINT_CONTRADICTION, day, pair, key), []
                ).append(cand)

    conflicts: list[Conflict] = []
    for (kind, day, pair, key), cands in groups.items():
        for region in _merge_candidates(cands):
            info = dict(region.info)
            participants = frozenset(owner for owner, _ in info.values())
            if kind is ConflictKind.CONSTRAINT_CONTRADICTION:
                bounds: dict[str, tuple[float, float]] = {}
                for owner, interval in info.values():
                    lo, hi = bounds.get(owner, (float("-inf"), float("inf")))
                    bounds[owner] = (max(lo, interval[0]), min(hi, interval[1]))
                context = ConflictContext(
                    day=day,
                    start=region.start,
                    end=region.end,
                    attribute=key[1],
                    zone=key[2],
                    bounds=tuple(sorted(bounds.items())),
                )
                key_slug = _slug(key[1] if key[2] is None else f"{key[1]}_{key[2]}")
            else:
                classes: dict[str, str] = {}
                for rid in sorted(region.rules):
                    owner, cls = info[rid]
                    classes.setdefault(owner, cls)
                context = ConflictContext(
                    day=day,
                    start=region.start,
                    end=region.end,
                    resource=key[1] if key[0] == "resource" else None,
                    activity_class=key[1] if key[0] == "class" else None,
                    classes=tuple(sorted(classes.items())),
                )
                key_slug = _slug(key[1])
            u1, u2 = sorted(pair)
            conflict_id = (
                f"{_KIND_PREFIX[kind]}-{day.value}-{_slug(u1)}-{_slug(u2)}"
                f"-{key_slug}-{region.start}"
            )
            conflicts.append(
                Conflict(
                    conflict_id=conflict_id,
                    kind=kind,
                    participants=participants,
                    rule_ids=region.rules,
                    context=context,
                )
            )

    conflicts.sort(
        key=lambda c: (
            c.context.day.index,
            c.context.start,
            c.kind.value,
            sorted(c.participants),
            c.conflict_id,
        )
    )
    return tuple(conflicts)


# ---------------------------------------------------------------------------
# Resolution


def _alphabetical_winner(users: Iterable[str], names: Mapping[str, str]) -> str:
    return min(users, key=lambda u: (names.get(u, u).casefold(), u))


def resolve(
    conflict: Conflict,
    policy: ResolutionPolicy,
    first_names: Optional[Mapping[str, str]] = None,
) -> Resolution:
    """Apply the policy to one conflict, deterministically."""
    names = dict(first_names or {})
    participants = sorted(conflict.participants)

    if policy.variant is PolicyVariant.ESCALATE_TO_DISCUSSION:
        return Resolution(
            conflict_id=conflict.conflict_id,
            policy_applied=policy.variant,
            outcome=Outcome.ESCALATED,
            rationale="flagged for group discussion; no automatic winner",
        )

    if policy.variant is PolicyVariant.ACTIVITY_PRIORITY:
        classes = conflict.context.classes_map()
        ranks: dict[str, int] = {}
        for user in participants:
            cls = classes.get(user)
            if cls is None:
                raise PolicyInapplicable(
                    f"{conflict.conflict_id}: no activity class for {user}"
                )
            if cls not in policy.priority:
                raise PolicyInapplicable(
                    f"{conflict.conflict_id}: class {cls!r} not in priority order"
                )
            ranks[user] = policy.priority.index(cls)
        best = min(ranks.values())
        leaders = [u for u in participants if ranks[u] == best]
        if len(leaders) == 1:
            winner = leaders[0]
            rationale = f"{classes[winner]} outranks " + ", ".join(
                sorted({classes[u] for u in participants if u != winner})
            )
        else:
            tiebreak = policy.tiebreak or PolicyVariant.ALPHABETICAL_FIRST_NAME
            if tiebreak is not PolicyVariant.ALPHABETICAL_FIRST_NAME:
                raise PolicyInapplicable(
                    f"{conflict.conflict_id}: unsupported tiebreak {tiebreak.value}"
                )
            winner = _alphabetical_winner(leaders, names)
            rationale = (
                f"equal-priority {classes[winner]}; "
                f"{names.get(winner, winner)} comes first alphabetically"
            )
    elif policy.variant is PolicyVariant.ALPHABETICAL_FIRST_NAME:
        winner = _alphabetical_winner(participants, names)
        rationale = f"{names.get(winner, winner)} comes first alphabetically"
    else:  # pragma: no cover - exhaustive over PolicyVariant
        raise PolicyInapplicable(f"unknown policy variant {policy.variant!r}")

    losers = [u for u in participants if u != winner]
    reassignments: list[tuple[str, Reassignment]] = []
    if conflict.kind is ConflictKind.RESOURCE_CONTENTION:
        contested = conflict.context.resource
        order = policy.resource_order
        fallbacks: tuple[str, ...] = ()
        if contested in order:
            fallbacks = order[order.index(contested) + 1 :]
        for k, loser in enumerate(losers):
            if k < len(fallbacks):
                reassignments.append(
                    (loser, Reassignment(fallbacks[k], f"moved to {fallbacks[k]}"))
                )
            else:
                reassignments.append((loser, Reassignment(None, SUGGEST_ANOTHER_TIME)))
    elif conflict.kind is ConflictKind.SCHEDULE_OVERLAP:
        for loser in losers:
            reassignments.append((loser, Reassignment(None, SUGGEST_ANOTHER_TIME)))

    return Resolution(
        conflict_id=conflict.conflict_id,
        policy_applied=policy.variant,
        outcome=Outcome.WINNER,
        winner=winner,
        reassignments=tuple(reassignments),
        rationale=rationale,
    )


def resolve_all(scenario: Scenario, conflicts: Sequence[Conflict]) -> tuple[Resolution, ...]:
    names = scenario.first_names()
    return tuple(resolve(c, scenario.policy, names) for c in conflicts)


# ---------------------------------------------------------------------------
# Plan validation


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of scoring a week of plans against a scenario."""

    violations: tuple[str, ...]
    satisfied_rule_ids: tuple[str, ...]
    resolved_conflict_ids: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "violations": list(self.violations),
            "satisfied_rule_ids": list(self.satisfied_rule_ids),
            "resolved_conflict_ids": list(self.resolved_conflict_ids),
        }

    @staticmethod
    def from_dict(d: Mapping[str, Any]) -> "ValidationReport":
        return ValidationReport(
            violations=tuple(d.get("violations", ())),
            satisfied_rule_ids=tuple(d.get("satisfied_rule_ids", ())),
            resolved_conflict_ids=tuple(d.get("resolved_conflict_ids", ())),
        )


def _in_region(action: PlanAction, start: int, end: int) -> bool:
    return windows_overlap(action.start, action.end, start, end)


def _performs_side(action: PlanAction, user: str, side_rules: frozenset[str]) -> bool:
    return user in action.users and bool(set(action.rule_ids) & side_rules)


def validate_plan(
    plans: Sequence[Plan],
    scenario: Scenario,
    require_checkers: Optional[bool] = None,
    horizon: Iterable[Weekday] = WEEKDAYS,
) -> ValidationReport:
    """Score plans: checker passes, active contradictions, resolved conflicts.

    A conflict counts as resolved only when some action cites its
    conflict_id and the plans treat it consistently with the scenario's
    policy (right winner holds the contested resource or slot; escalations
    are flagged rather than silently decided). A violation is an active
    contradiction in the plans themselves; merely ignoring a conflict is
    not a violation.

    require_checkers defaults to scenario.bundled: evaluation scenarios must
    have a predicate on every rule, and a missing one raises MissingChecker
    rather than silently deflating the satisfied count.
    """
    if require_checkers is None:
        require_checkers = scenario.bundled
    plans = list(plans)
    violations: list[str] = []

    satisfied = []
    for r in scenario.rules:
        if r.checker is None:
            if require_checkers:
                raise MissingChecker(f"rule {r.rule_id} has no plan predicate")
            continue
        if satisfies(r.checker, plans):
            satisfied.append(r.rule_id)
    satisfied.sort()

    # Structural contradictions, independent of any detected conflict.
    for plan in plans:
        granted = [a for a in plan.actions if a.resource is not None]
        for i, a in enumerate(granted):
            for b in granted[i + 1 :]:
                if a.resource != b.resource:
                    continue
                if not windows_overlap(a.start, a.end, b.start, b.end):
                    continue
                if a.value is not None and b.value is not None:
                    if a.value != b.value:
                        violations.append(
                            f"{plan.day.value}: conflicting {a.resource} settings "
                            f"{a.value:g} and {b.value:g} at overlapping times"
                        )
                elif a.value is None and b.value is None:
                    violations.append(
                        f"{plan.day.value}: {a.resource} double-booked "
                        f"[{a.start}, {a.end}) and [{b.start}, {b.end})"
                    )

    conflicts = detect_conflicts(scenario, horizon)
    names = scenario.first_names()
    rules_by_id = {r.rule_id: r for r in scenario.rules}
    resolved: list[str] = []

    for conflict in conflicts:
        try:
            expected = resolve(conflict, scenario.policy, names)
        except PolicyInapplicable:
            continue
        ctx = conflict.context
        cited = [
            a
            for plan in plans
            for a in plan.actions
            if conflict.conflict_id in a.conflict_ids
        ]
        day_actions = [a for plan in plans if plan.day is ctx.day for a in plan.actions]
        region_actions = [a for a in day_actions if _in_region(a, ctx.start, ctx.end)]

        if conflict.kind is ConflictKind.RESOURCE_CONTENTION:
            occupants = [a for a in region_actions if a.resource == ctx.resource]
            wrong = [a for a in occupants if expected.winner not in a.users]
            for a in wrong:
                violations.append(
                    f"{conflict.conflict_id}: {ctx.resource} granted to "
                    f"{', '.join(a.users) or 'nobody'} instead of {expected.winner}"
                )
            winner_holds = any(expected.winner in a.users for a in occupants)
            if cited and not wrong and winner_holds:
                resolved.append(conflict.conflict_id)

        elif conflict.kind is ConflictKind.SCHEDULE_OVERLAP:
            sides = {
                user: frozenset(
                    rid
                    for rid in conflict.rule_ids
                    if rules_by_id[rid].owner == user
                )
                for user in conflict.participants
            }
            occupancy = {
                user: [a for a in region_actions if _performs_side(a, user, side)]
                for user, side in sides.items()
            }
            simultaneous = False
            users = sorted(conflict.participants)
            for i, ua in enumerate(users):
                for ub in users[i + 1 :]:
                    for a in occupancy[ua]:
                        for b in occupancy[ub]:
                            if a is not b and windows_overlap(a.start, a.end, b.start, b.end):
                                simultaneous = True
            winner = expected.winner
            winner_present = bool(occupancy.get(winner))
            loser_present = any(occupancy[u] for u in users if u != winner)
            if simultaneous:
                violations.append(
                    f"{conflict.conflict_id}: conflicting {ctx.activity_class} "
                    f"commitments scheduled simultaneously on {ctx.day.value}"
                )
            elif loser_present and not winner_present:
                violations.append(
                    f"{conflict.conflict_id}: slot kept by lower-priority user "
                    f"while {winner} was displaced"
                )
            if cited and winner_present and not simultaneous and not loser_present:
                resolved.append(conflict.conflict_id)

        else:  # CONSTRAINT_CONTRADICTION
            bounds = ctx.bounds_map()
            settings = [
                a
                for a in region_actions
                if a.value is not None and (ctx.zone is None or a.resource == ctx.zone)
            ]
            if expected.outcome is Outcome.ESCALATED:
                one_sided = [
                    a
                    for a in settings
                    if any(lo <= a.value <= hi for lo, hi in bounds.values())
                    and not all(lo <= a.value <= hi for lo, hi in bounds.values())
                ]
                if one_sided and not cited:
                    violations.append(
                        f"{conflict.conflict_id}: {ctx.attribute} in "
                        f"{ctx.zone or 'shared space'} set one-sidedly without "
                        f"flagging the disagreement"
                    )
                if cited:
                    resolved.append(conflict.conflict_id)
            else:
                winner_bound = bounds.get(expected.winner, (float("-inf"), float("inf")))
                off_winner = [
                    a
                    for a in settings
                    if not (winner_bound[0] <= a.value <= winner_bound[1])
                ]
                for a in off_winner:
                    violations.append(
                        f"{conflict.conflict_id}: {ctx.attribute} set to "
                        f"{a.value:g} against the prevailing preference of "
                        f"{expected.winner}"
                    )
                if cited and settings and not off_winner:
                    resolved.append(conflict.conflict_id)

    return ValidationReport(
        violations=tuple(violations),
        satisfied_rule_ids=tuple(satisfied),
        resolved_conflict_ids=tuple(sorted(set(resolved))),
    )


__all__ = [
    "MissingChecker",
    "PolicyInapplicable",
    "detect_conflicts",
    "resolve",
    "resolve_all",
    "ValidationReport",
    "validate_plan",
]
