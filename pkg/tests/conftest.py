"""Shared builders for the test suite."""

from __future__ import annotations

from typing import Optional

from concord.model import (
    Comparator,
    Constraint,
    OTHER,
    PolicyVariant,
    ResolutionPolicy,
    Rule,
    RuleKind,
    Scenario,
    ScheduleEntry,
    TimeWindow,
    UserProfile,
    Weekday,
)

FIRST_NAMES = {"ua": "Avery", "ub": "Bo", "uc": "Casey"}


def sched_rule(
    rule_id: str,
    owner: str,
    day: Weekday,
    start: int,
    end: int,
    activity: str = "work session",
    activity_class: str = OTHER,
    resource: Optional[str] = None,
) -> Rule:
    return Rule(
        rule_id=rule_id,
        owner=owner,
        kind=RuleKind.SCHEDULE,
        text=f"{owner} has {activity} on {day.value} {start}-{end}",
        payload=ScheduleEntry(
            day=day,
            start=start,
            end=end,
            activity=activity,
            activity_class=activity_class,
            resource=resource,
        ),
    )


def pref_rule(
    rule_id: str,
    owner: str,
    comparator: Comparator = Comparator.LE,
    value: float = 70.0,
    attribute: str = "temperature",
    unit: str = "F",
    zone: Optional[str] = None,
    condition: Optional[TimeWindow] = None,
) -> Rule:
    return Rule(
        rule_id=rule_id,
        owner=owner,
        kind=RuleKind.PREFERENCE,
        text=f"{owner} wants {attribute} {comparator.value} {value:g}",
        payload=Constraint(
            attribute=attribute,
            comparator=comparator,
            value=value,
            unit=unit,
            zone=zone,
            condition=condition,
        ),
    )


def mk_scenario(
    rules,
    policy: Optional[ResolutionPolicy] = None,
    name: str = "test",
) -> Scenario:
    owners = sorted({r.owner for r in rules}) or ["ua"]
    users = tuple(
        UserProfile(user_id=o, first_name=FIRST_NAMES.get(o, o.capitalize()))
        for o in owners
    )
    return Scenario(
        name=name,
        users=users,
        rules=tuple(rules),
        policy=policy
        or ResolutionPolicy(variant=PolicyVariant.ALPHABETICAL_FIRST_NAME),
    )
