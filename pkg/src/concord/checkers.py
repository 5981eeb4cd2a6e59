"""Evaluate plan predicates against a week of daily plans.

A predicate (model.Predicate) is a small JSON-serializable test; this module
is the interpreter. All interval logic is half-open [start, end), so actions
that merely touch do not overlap.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import Comparator, Plan, PlanAction, Predicate, Weekday

_FILTER_KINDS = {"action", "absence", "setting", "no_overlap", "no_conflicting_settings"}
_KINDS = _FILTER_KINDS | {"all", "any"}


def windows_overlap(a_start: int, a_end: int, b_start: int, b_end: int) -> bool:
    return a_start < b_end and b_start < a_end


def _matches(pred: Predicate, day: Weekday, action: PlanAction) -> bool:
    if pred.user is not None and pred.user not in action.users:
        return False
    if pred.day is not None and day is not pred.day:
        return False
    if pred.overlaps is not None:
        lo, hi = pred.overlaps
        if not windows_overlap(action.start, action.end, lo, hi):
            return False
    if pred.contains:
        text = action.description.lower()
        if not all(term.lower() in text for term in pred.contains):
            return False
    if pred.resource is not None and action.resource != pred.resource:
        return False
    return True


def matching_actions(pred: Predicate, plans: Iterable[Plan]) -> list[tuple[Weekday, PlanAction]]:
    """All (day, action) pairs the predicate's filters select."""
    out = []
    for plan in plans:
        for action in plan.actions:
            if _matches(pred, plan.day, action):
                out.append((plan.day, action))
    return out


def _compare(cmp: Comparator, actual: float, bound: float) -> bool:
    if cmp is Comparator.LE:
        return actual <= bound
    if cmp is Comparator.GE:
        return actual >= bound
    return actual == bound


def _setting_ok(pred: Predicate, plans: Sequence[Plan]) -> bool:
    if pred.comparator is None or pred.value is None:
        raise ValueError("setting predicate needs comparator and value")
    hits = [
        (day, action)
        for day, action in matching_actions(pred, plans)
        if action.value is not None
        and (pred.zone is None or action.resource == pred.zone)
    ]
    if not hits:
        return not pred.require
    return all(_compare(pred.comparator, action.value, pred.value) for _, action in hits)


def _no_overlap_ok(pred: Predicate, plans: Sequence[Plan]) -> bool:
    for plan in plans:
        actions = [a for a in plan.actions if _matches(pred, plan.day, a)]
        granted = [a for a in actions if a.resource is not None]
        for i, a in enumerate(granted):
            for b in granted[i + 1 :]:
                if a.resource == b.resource and windows_overlap(a.start, a.end, b.start, b.end):
                    return False
    return True


def _no_conflicting_settings_ok(pred: Predicate, plans: Sequence[Plan]) -> bool:
    for plan in plans:
        actions = [a for a in plan.actions if _matches(pred, plan.day, a)]
        settings = [a for a in actions if a.value is not None and a.resource is not None]
        for i, a in enumerate(settings):
            for b in settings[i + 1 :]:
                if (
                    a.resource == b.resource
                    and a.value != b.value
                    and windows_overlap(a.start, a.end, b.start, b.end)
                ):
                    return False
    return True


def satisfies(pred: Predicate, plans: Iterable[Plan]) -> bool:
    """True when the week of plans passes the predicate."""
    plans = list(plans)
    if pred.kind == "action":
        return bool(matching_actions(pred, plans))
    if pred.kind == "absence":
        return not matching_actions(pred, plans)
    if pred.kind == "setting":
        return _setting_ok(pred, plans)
    if pred.kind == "all":
        return all(satisfies(p, plans) for p in pred.of)
    if pred.kind == "any":
        return any(satisfies(p, plans) for p in pred.of)
    if pred.kind == "no_overlap":
        return _no_overlap_ok(pred, plans)
    if pred.kind == "no_conflicting_settings":
        return _no_conflicting_settings_ok(pred, plans)
    raise ValueError(f"unknown predicate kind {pred.kind!r}")


__all__ = ["satisfies", "matching_actions", "windows_overlap"]
