"""Predicate interpreter over weekly plans."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from concord.checkers import matching_actions, satisfies, windows_overlap
from concord.model import Comparator, Plan, PlanAction, Predicate, Weekday

MON = Weekday.MON
TUE = Weekday.TUE


def week(*plans: Plan) -> list[Plan]:
    return list(plans)


def act(start, end, desc, users=(), resource=None, value=None, rule_ids=(), conflict_ids=()):
    return PlanAction(
        start=start,
        end=end,
        description=desc,
        users=tuple(users),
        rule_ids=tuple(rule_ids),
        conflict_ids=tuple(conflict_ids),
        resource=resource,
        value=value,
    )


SAMPLE = week(
    Plan(
        day=MON,
        actions=(
            act(540, 600, "Client consultation in the Sun room", ("ua",), resource="sun_room"),
            act(540, 600, "Team meeting in the Apple room", ("ub",), resource="apple_room"),
            act(600, 660, "Set den temperature to 70 F", ("uc",), resource="den", value=70.0),
        ),
    ),
    Plan(day=TUE, actions=(act(300, 360, "Quiet reading hour", ("uc",)),)),
)


# ---------------------------------------------------------------------------
# window overlap [TRIVIAL]


def test_touching_windows_do_not_overlap():
    assert not windows_overlap(0, 60, 60, 120)
    assert not windows_overlap(60, 120, 0, 60)


def test_nested_and_partial_overlap():
    assert windows_overlap(0, 100, 50, 60)
    assert windows_overlap(50, 150, 100, 200)
    assert windows_overlap(0, 1, 0, 1440)


@given(
    st.integers(0, 1439), st.integers(1, 1440),
    st.integers(0, 1439), st.integers(1, 1440),
)
def test_overlap_is_symmetric(a, b, c, d):
    a, b = min(a, b), max(a, b) + 1
    c, d = min(c, d), max(c, d) + 1
    assert windows_overlap(a, b, c, d) == windows_overlap(c, d, a, b)


# ---------------------------------------------------------------------------
# filters


def test_action_filters_by_user_day_and_keywords():
    assert satisfies(Predicate(kind="action", user="ua", contains=("sun",)), SAMPLE)
    assert not satisfies(Predicate(kind="action", user="ua", contains=("apple",)), SAMPLE)
    assert satisfies(Predicate(kind="action", day=TUE, contains=("reading",)), SAMPLE)
    assert not satisfies(Predicate(kind="action", day=MON, contains=("reading",)), SAMPLE)


def test_contains_is_case_insensitive_and_conjunctive():
    assert satisfies(Predicate(kind="action", contains=("CLIENT", "sun ROOM")), SAMPLE)
    assert not satisfies(Predicate(kind="action", contains=("client", "apple")), SAMPLE)


def test_overlaps_filter_uses_half_open_windows():
    hit = Predicate(kind="action", resource="sun_room", overlaps=(599, 601))
    miss = Predicate(kind="action", resource="sun_room", overlaps=(600, 660))
    assert satisfies(hit, SAMPLE)
    assert not satisfies(miss, SAMPLE)


def test_matching_actions_reports_day():
    pairs = matching_actions(Predicate(kind="action", contains=("reading",)), SAMPLE)
    assert [(d, a.start) for d, a in pairs] == [(TUE, 300)]


def test_absence_is_negated_action():
    p = Predicate(kind="absence", user="ua", day=TUE)
    assert satisfies(p, SAMPLE)
    assert not satisfies(Predicate(kind="absence", user="ua", day=MON), SAMPLE)


# ---------------------------------------------------------------------------
# settings


def test_setting_checks_all_valued_actions_in_zone():
    ok = Predicate(kind="setting", zone="den", comparator=Comparator.LE, value=70.0)
    too_cold = Predicate(kind="setting", zone="den", comparator=Comparator.GE, value=72.0)
    assert satisfies(ok, SAMPLE)
    assert not satisfies(too_cold, SAMPLE)


def test_setting_require_flag_on_missing_zone():
    absent = Predicate(kind="setting", zone="gym", comparator=Comparator.EQ, value=80.0)
    assert not satisfies(absent, SAMPLE)
    relaxed = Predicate(
        kind="setting", zone="gym", comparator=Comparator.EQ, value=80.0, require=False
    )
    assert satisfies(relaxed, SAMPLE)


def test_setting_without_comparator_is_an_error():
    with pytest.raises(ValueError):
        satisfies(Predicate(kind="setting", zone="den"), SAMPLE)


def test_unknown_kind_is_an_error():
    with pytest.raises(ValueError):
        satisfies(Predicate(kind="sometimes"), SAMPLE)


# ---------------------------------------------------------------------------
# combinators and week-level invariants


def test_all_and_any_combinators():
    yes = Predicate(kind="action", contains=("sun",))
    no = Predicate(kind="action", contains=("nonexistent",))
    assert satisfies(Predicate(kind="all", of=(yes,)), SAMPLE)
    assert not satisfies(Predicate(kind="all", of=(yes, no)), SAMPLE)
    assert satisfies(Predicate(kind="any", of=(no, yes)), SAMPLE)
    assert not satisfies(Predicate(kind="any", of=(no,)), SAMPLE)
    # vacuous truth / falsity
    assert satisfies(Predicate(kind="all"), SAMPLE)
    assert not satisfies(Predicate(kind="any"), SAMPLE)


def test_no_overlap_detects_double_booking():
    assert satisfies(Predicate(kind="no_overlap"), SAMPLE)
    double = week(
        Plan(
            day=MON,
            actions=(
                act(540, 600, "a", ("ua",), resource="sun_room"),
                act(570, 630, "b", ("ub",), resource="sun_room"),
            ),
        )
    )
    assert not satisfies(Predicate(kind="no_overlap"), double)


def test_no_overlap_allows_touching_grants():
    touching = week(
        Plan(
            day=MON,
            actions=(
                act(540, 600, "a", ("ua",), resource="sun_room"),
                act(600, 660, "b", ("ub",), resource="sun_room"),
            ),
        )
    )
    assert satisfies(Predicate(kind="no_overlap"), touching)


def test_no_conflicting_settings():
    assert satisfies(Predicate(kind="no_conflicting_settings"), SAMPLE)
    clash = week(
        Plan(
            day=MON,
            actions=(
                act(0, 120, "warm", resource="den", value=76.0),
                act(60, 180, "cool", resource="den", value=68.0),
            ),
        )
    )
    assert not satisfies(Predicate(kind="no_conflicting_settings"), clash)
    agreeing = week(
        Plan(
            day=MON,
            actions=(
                act(0, 120, "warm", resource="den", value=76.0),
                act(60, 180, "warm too", resource="den", value=76.0),
            ),
        )
    )
    assert satisfies(Predicate(kind="no_conflicting_settings"), agreeing)


# ---------------------------------------------------------------------------
# properties


@st.composite
def small_weeks(draw):
    plans = []
    for day in (MON, TUE):
        actions = []
        for _ in range(draw(st.integers(0, 3))):
            start = draw(st.integers(0, 23)) * 60
            end = draw(st.integers(start // 60 + 1, 24)) * 60
            actions.append(
                act(
                    start,
                    end,
                    draw(st.sampled_from(["sun room visit", "team sync", "reading"])),
                    users=draw(st.lists(st.sampled_from(["ua", "ub"]), max_size=2)),
                    resource=draw(st.none() | st.sampled_from(["sun_room", "den"])),
                    value=draw(st.none() | st.just(70.0)),
                )
            )
        plans.append(Plan(day=day, actions=tuple(actions)))
    return plans


@given(small_weeks(), st.sampled_from(["sun", "team", "reading", "nothing"]))
def test_absence_complements_action(plans, term):
    p_action = Predicate(kind="action", contains=(term,))
    p_absence = Predicate(kind="absence", contains=(term,))
    assert satisfies(p_absence, plans) == (not satisfies(p_action, plans))


@given(small_weeks())
def test_empty_week_properties(plans):
    del plans
    empty: list[Plan] = []
    assert not satisfies(Predicate(kind="action"), empty)
    assert satisfies(Predicate(kind="absence"), empty)
    assert satisfies(Predicate(kind="no_overlap"), empty)
