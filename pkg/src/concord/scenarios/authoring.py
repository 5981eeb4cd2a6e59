"""Builders for the three bundled scenarios.

The shipped JSON assets under data/ are generated from this module (see
scripts/build_scenarios.py), never edited by hand, so the assets can always
be regenerated and diffed. Each builder assembles 3 users with 20 rules
apiece, runs the conflict engine, and lays out a reference week that the
plan validator scores as fully satisfied: every rule checker passes, all
12 conflicts are resolved, and no violations remain.

Layout conventions the reference plans rely on:

  * Conflict regions never overlap each other on the same resource and
    day, so a displaced booking can always land in a free band.
  * Rules that participate in conflicts sit at the end of each user's
    document; a truncated document loses those before anything else.
  * Every checker keys on a token that appears in exactly the intended
    reference actions, so satisfaction is insensitive to how a planner
    words the rest of the day.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Callable, Iterable, Sequence

from ..conflicts import detect_conflicts, resolve_all
from ..model import (
    BRAINSTORMING,
    CLIENT_CONSULTATION,
    OTHER,
    TEAM_MEETING,
    Comparator,
    Conflict,
    ConflictKind,
    Constraint,
    Plan,
    PlanAction,
    PolicyVariant,
    Predicate,
    ReferenceSolution,
    ResolutionPolicy,
    Rule,
    RuleKind,
    ScheduleEntry,
    Scenario,
    TimeWindow,
    UserProfile,
    Weekday,
    WORKWEEK,
)
from . import render_documents

MON, TUE, WED, THU, FRI = WORKWEEK

LE = Comparator.LE
GE = Comparator.GE
EQ = Comparator.EQ

ASSISTANCE = "assistance"


# ---------------------------------------------------------------------------
# Small constructors


def _action_check(owner: str, token: str, day: Weekday | None = None) -> Predicate:
    return Predicate(kind="action", user=owner, day=day, contains=(token,))


def _setting_check(
    zone: str,
    comparator: Comparator,
    value: float,
    day: Weekday | None = None,
    overlaps: tuple[int, int] | None = None,
) -> Predicate:
    return Predicate(
        kind="setting",
        zone=zone,
        comparator=comparator,
        value=value,
        day=day,
        overlaps=overlaps,
    )


def _pref(rule_id: str, owner: str, text: str, token: str) -> Rule:
    """Preference checked by a token in some action's description."""
    return Rule(rule_id, owner, RuleKind.PREFERENCE, text, checker=_action_check(owner, token))


def _temp_pref(
    rule_id: str,
    owner: str,
    text: str,
    comparator: Comparator,
    value: float,
    zone: str | None,
    condition: TimeWindow | None = None,
    checker: Predicate | None = None,
) -> Rule:
    payload = Constraint("temperature", comparator, value, unit="F", zone=zone, condition=condition)
    return Rule(rule_id, owner, RuleKind.PREFERENCE, text, payload=payload, checker=checker)


def _sched(
    rule_id: str,
    owner: str,
    text: str,
    day: Weekday,
    start: int,
    end: int,
    activity: str,
    token: str,
    cls: str = OTHER,
    resource: str | None = None,
) -> Rule:
    payload = ScheduleEntry(day, start, end, activity, cls, resource)
    return Rule(rule_id, owner, RuleKind.SCHEDULE, text, payload=payload, checker=_action_check(owner, token, day))


def _policy_rule(rule_id: str, owner: str, text: str, checker: Predicate) -> Rule:
    return Rule(rule_id, owner, RuleKind.POLICY, text, checker=checker)


def _act(
    start: int,
    end: int,
    description: str,
    users: Sequence[str],
    rules: Sequence[str] = (),
    conflicts: Sequence[str] = (),
    resource: str | None = None,
    value: float | None = None,
) -> PlanAction:
    return PlanAction(
        start=start,
        end=end,
        description=description,
        users=tuple(users),
        rule_ids=tuple(rules),
        conflict_ids=tuple(conflicts),
        resource=resource,
        value=value,
    )


def _day_plan(day: Weekday, actions: Iterable[PlanAction]) -> Plan:
    ordered = tuple(sorted(actions, key=lambda a: (a.start, a.end, a.description)))
    return Plan(day=day, actions=ordered)


Finder = Callable[..., str]


def _finder(conflicts: Sequence[Conflict]) -> Finder:
    """Look up detected conflict ids by (kind, day, region start, users).

    The reference plans cite conflicts the engine found rather than
    hand-maintained id strings, so an id scheme change cannot silently
    desynchronize the assets.
    """
    index: dict[tuple, str] = {}
    for c in conflicts:
        key = (c.kind, c.context.day, c.context.start, tuple(sorted(c.participants)))
        if key in index:
            raise AssertionError(f"ambiguous conflict key {key}")
        index[key] = c.conflict_id

    def find(kind: ConflictKind, day: Weekday, start: int, *users: str) -> str:
        return index[(kind, day, start, tuple(sorted(users)))]

    return find


def _finish(
    name: str,
    user_specs: Sequence[tuple[str, str]],
    rules: Sequence[Rule],
    policy: ResolutionPolicy,
    build_plans: Callable[[Finder], tuple[Plan, ...]],
) -> Scenario:
    users = tuple(
        UserProfile(uid, first, tuple(r.rule_id for r in rules if r.owner == uid))
        for uid, first in user_specs
    )
    core = Scenario(name=name, users=users, rules=tuple(rules), policy=policy)
    conflicts = detect_conflicts(core)
    if len(conflicts) != 12:
        raise AssertionError(f"{name}: expected 12 conflicts, engine found {len(conflicts)}")
    plans = build_plans(_finder(conflicts))
    reference = ReferenceSolution(plans=plans, conflicts=conflicts, resolutions=resolve_all(core, conflicts))
    documents = tuple(sorted(render_documents(core).items()))
    return replace(core, documents=documents, reference=reference, bundled=True)


# ---------------------------------------------------------------------------
# Workplace: two meeting rooms, activity-priority policy


SUN = "sun_room"
APPLE = "apple_room"


def _workplace_rules() -> list[Rule]:
    r: list[Rule] = []

    # Mina: preferences 01-08, solo bookings 09-12, contested bookings 13-20.
    r += [
        _pref("wp-mina-01", "mina", "Mina wants the whiteboard wiped down and fresh markers laid out before any session she runs.", "whiteboard"),
        _pref("wp-mina-02", "mina", "Mina asks for a printed agenda on the table for every meeting she hosts.", "printed agenda"),
        _temp_pref(
            "wp-mina-03", "mina",
            "Mina keeps her client sessions crisp and professional, so the Sun room should be at 68 degrees Fahrenheit or cooler while she consults.",
            LE, 68.0, SUN, checker=_setting_check(SUN, LE, 68.0),
        ),
        _pref("wp-mina-04", "mina", "Mina likes a full water carafe with glasses set out for guests.", "water carafe"),
        _pref("wp-mina-05", "mina", "Mina wants the screen share tested before clients arrive.", "screen share"),
        _pref("wp-mina-06", "mina", "Mina asks for name placards at each seat when outside guests attend.", "placards"),
        _pref("wp-mina-07", "mina", "Mina hangs a quiet sign on the door during consultations and expects it honored.", "quiet sign"),
        _pref("wp-mina-08", "mina", "Mina wants whoever books after her to reset the room to its default layout.", "reset the room"),
        _sched("wp-mina-09", "mina", "Mina blocks the Apple room on Monday from 8:00 to 8:45 for her design one-on-one.", MON, 480, 525, "design one-on-one", "design one-on-one", resource=APPLE),
        _sched("wp-mina-10", "mina", "Mina takes the Apple room on Tuesday at 8:00 for forty-five minutes of sprint capacity notes.", TUE, 480, 525, "sprint capacity notes", "sprint capacity", resource=APPLE),
        _sched("wp-mina-11", "mina", "Mina reserves the Sun room on Wednesday from 8:00 to 9:00 for her metrics review block.", WED, 480, 540, "metrics review block", "metrics review", resource=SUN),
        _sched("wp-mina-12", "mina", "Mina holds a writing block in the Sun room on Friday from 15:00 to 16:00.", FRI, 900, 960, "writing block", "writing block", resource=SUN),
        _sched("wp-mina-13", "mina", "Mina meets the Harlow account for a kickoff consultation in the Sun room on Monday from 9:00 to 10:00.", MON, 540, 600, "Harlow account kickoff", "harlow", cls=CLIENT_CONSULTATION, resource=SUN),
        _sched("wp-mina-14", "mina", "Mina runs the roadmap sync with her team in the Apple room on Monday from 11:00 to 12:00.", MON, 660, 720, "roadmap sync", "roadmap sync", cls=TEAM_MEETING, resource=APPLE),
        _sched("wp-mina-15", "mina", "Mina gathers the growth experiments jam in the Sun room on Tuesday from 10:00 to 11:00.", TUE, 600, 660, "growth experiments jam", "growth experiments", cls=BRAINSTORMING, resource=SUN),
        _sched("wp-mina-16", "mina", "Mina sketches pricing ideas with two designers in the Apple room on Wednesday from 9:30 to 10:30.", WED, 570, 630, "pricing sketch session", "pricing sketch", cls=BRAINSTORMING, resource=APPLE),
        _sched("wp-mina-17", "mina", "Mina convenes the quarterly ops sync in the Sun room on Wednesday from 13:00 to 14:00.", WED, 780, 840, "quarterly ops sync", "quarterly ops", cls=TEAM_MEETING, resource=SUN),
        _sched("wp-mina-18", "mina", "Mina schedules budget alignment with team leads in the Sun room on Thursday from 10:00 to 11:30.", THU, 600, 690, "budget alignment", "budget alignment", cls=TEAM_MEETING, resource=SUN),
        _sched("wp-mina-19", "mina", "Mina reviews the Linden contract with the client in the Apple room on Thursday from 14:00 to 15:00.", THU, 840, 900, "Linden contract review", "linden", cls=CLIENT_CONSULTATION, resource=APPLE),
        _sched("wp-mina-20", "mina", "Mina coordinates desk move logistics in the Apple room on Friday from 9:00 to 10:00.", FRI, 540, 600, "desk move logistics", "desk move", resource=APPLE),
    ]

    # Oliver.
    r += [
        _pref("wp-oliver-01", "oliver", "Oliver plays low ambient music while his group warms up.", "ambient music"),
        _pref("wp-oliver-02", "oliver", "Oliver wants the blinds open for natural light in any room he books.", "blinds open"),
        _pref("wp-oliver-03", "oliver", "Oliver asks for a flip chart with fresh pads within reach.", "flip chart"),
        _pref("wp-oliver-04", "oliver", "Oliver arranges the chairs in a circle for his sessions.", "circle"),
        _pref("wp-oliver-05", "oliver", "Oliver brews a pot of decaf before afternoon meetings.", "decaf"),
        _pref("wp-oliver-06", "oliver", "Oliver needs the HDMI cable at the podium for demos.", "hdmi"),
        _pref("wp-oliver-07", "oliver", "Oliver wants the recap template printed for attendees.", "recap template"),
        _pref("wp-oliver-08", "oliver", "Oliver leaves the door propped open so latecomers can slip in.", "door propped"),
        _sched("wp-oliver-09", "oliver", "Oliver blocks the Sun room on Monday from 16:30 to 17:15 for compliance paperwork.", MON, 990, 1035, "compliance paperwork", "compliance paperwork", resource=SUN),
        _sched("wp-oliver-10", "oliver", "Oliver takes the Sun room on Tuesday from 8:30 to 9:15 for portfolio triage.", TUE, 510, 555, "portfolio triage", "portfolio triage", resource=SUN),
        _sched("wp-oliver-11", "oliver", "Oliver books the Apple room on Thursday from 8:30 to 9:30 for a vendor sync.", THU, 510, 570, "vendor sync", "vendor sync", resource=APPLE),
        _sched("wp-oliver-12", "oliver", "Oliver starts Friday in the Sun room from 8:00 to 8:45 clearing expense approvals.", FRI, 480, 525, "expense approvals", "expense approvals", resource=SUN),
        _sched("wp-oliver-13", "oliver", "Oliver holds the platform standup with his team in the Sun room on Monday from 9:00 to 10:00.", MON, 540, 600, "platform standup", "platform standup", cls=TEAM_MEETING, resource=SUN),
        _sched("wp-oliver-14", "oliver", "Oliver hosts the Nexbridge renewal consultation in the Sun room on Monday from 15:00 to 16:00.", MON, 900, 960, "Nexbridge renewal", "nexbridge", cls=CLIENT_CONSULTATION, resource=SUN),
        _sched("wp-oliver-15", "oliver", "Oliver runs the release retrospective in the Apple room on Tuesday from 14:00 to 15:00.", TUE, 840, 900, "release retrospective", "release retrospective", cls=TEAM_MEETING, resource=APPLE),
        _sched("wp-oliver-16", "oliver", "Oliver riffs on the new logo with the brand pair in the Apple room on Wednesday from 9:30 to 10:30.", WED, 570, 630, "logo riff session", "logo riff", cls=BRAINSTORMING, resource=APPLE),
        _sched("wp-oliver-17", "oliver", "Oliver storyboards the client workshop in the Sun room on Wednesday from 15:00 to 16:30.", WED, 900, 990, "workshop storyboard", "workshop storyboard", cls=BRAINSTORMING, resource=SUN),
        _sched("wp-oliver-18", "oliver", "Oliver consults on the Harwick portfolio in the Sun room on Thursday from 10:00 to 11:30.", THU, 600, 690, "Harwick portfolio consult", "harwick", cls=CLIENT_CONSULTATION, resource=SUN),
        _sched("wp-oliver-19", "oliver", "Oliver drafts the offsite agenda with two leads in the Apple room on Friday from 9:00 to 10:00.", FRI, 540, 600, "offsite agenda riff", "offsite agenda", cls=BRAINSTORMING, resource=APPLE),
        _sched("wp-oliver-20", "oliver", "Oliver demos the sprint build to his team in the Sun room on Friday from 12:00 to 13:00.", FRI, 720, 780, "sprint demo", "sprint demo", cls=TEAM_MEETING, resource=SUN),
    ]

    # Tess.
    r += [
        _pref("wp-tess-01", "tess", "Tess covers the wall with sticky notes, so a fresh stack should be waiting.", "sticky notes"),
        _temp_pref(
            "wp-tess-02", "tess",
            "Tess runs cold and wants the Apple room at 71 degrees Fahrenheit or warmer when she works there.",
            GE, 71.0, APPLE, checker=_setting_check(APPLE, GE, 71.0),
        ),
        _pref("wp-tess-03", "tess", "Tess facilitates with a timer cube and wants it on the table.", "timer cube"),
        _pref("wp-tess-04", "tess", "Tess keeps spare notebooks on hand for anyone who arrives empty-handed.", "notebooks"),
        _pref("wp-tess-05", "tess", "Tess likes the window open a crack during long sessions.", "window open a crack"),
        _pref("wp-tess-06", "tess", "Tess wants the easel with a fresh pad standing by the wall.", "easel"),
        _pref("wp-tess-07", "tess", "Tess sips herbal tea while reviewing work, so a kettle nearby is appreciated.", "herbal tea"),
        _pref("wp-tess-08", "tess", "Tess puts out a snack bowl for late-afternoon meetings.", "snack bowl"),
        _sched("wp-tess-09", "tess", "Tess drafts proposals in the Sun room on Monday from 12:30 to 13:15.", MON, 750, 795, "proposal drafting", "proposal drafting", resource=SUN),
        _sched("wp-tess-10", "tess", "Tess runs hiring screens in the Sun room on Tuesday from 16:00 to 17:00.", TUE, 960, 1020, "hiring screens", "hiring screens", resource=SUN),
        _sched("wp-tess-11", "tess", "Tess audits client files in the Apple room on Wednesday from 8:00 to 9:00.", WED, 480, 540, "client files audit", "client files", resource=APPLE),
        _sched("wp-tess-12", "tess", "Tess writes grant applications in the Sun room on Thursday from 8:00 to 9:00.", THU, 480, 540, "grant write-up", "grant write-up", resource=SUN),
        _sched("wp-tess-13", "tess", "Tess leads campaign ideation with the marketing trio in the Apple room on Monday from 11:00 to 12:00.", MON, 660, 720, "campaign ideation", "campaign ideation", cls=BRAINSTORMING, resource=APPLE),
        _sched("wp-tess-14", "tess", "Tess holds the onboarding huddle for new hires in the Sun room on Monday from 15:00 to 16:00.", MON, 900, 960, "onboarding huddle", "onboarding huddle", cls=TEAM_MEETING, resource=SUN),
        _sched("wp-tess-15", "tess", "Tess briefs the Verity client on audit findings in the Sun room on Tuesday from 10:00 to 11:00.", TUE, 600, 660, "Verity audit briefing", "verity", cls=CLIENT_CONSULTATION, resource=SUN),
        _sched("wp-tess-16", "tess", "Tess calls a staffing huddle in the Apple room on Tuesday from 14:00 to 15:00.", TUE, 840, 900, "staffing huddle", "staffing huddle", cls=TEAM_MEETING, resource=APPLE),
        _sched("wp-tess-17", "tess", "Tess consults with the Calder estate in the Sun room on Wednesday from 13:00 to 14:00.", WED, 780, 840, "Calder estate consult", "calder", cls=CLIENT_CONSULTATION, resource=SUN),
        _sched("wp-tess-18", "tess", "Tess brainstorms the newsletter revamp in the Sun room on Wednesday from 15:00 to 16:30.", WED, 900, 990, "newsletter brainstorm", "newsletter", cls=BRAINSTORMING, resource=SUN),
        _sched("wp-tess-19", "tess", "Tess syncs on the training plan in the Apple room on Thursday from 14:00 to 15:00.", THU, 840, 900, "training plan sync", "training plan", cls=TEAM_MEETING, resource=APPLE),
        _sched("wp-tess-20", "tess", "Tess hosts the Mercer press consultation in the Sun room on Friday from 12:00 to 13:00.", FRI, 720, 780, "Mercer press consult", "mercer", cls=CLIENT_CONSULTATION, resource=SUN),
    ]
    return r


def _workplace_plans(find: Finder) -> tuple[Plan, ...]:
    rc = ConflictKind.RESOURCE_CONTENTION
    c1 = find(rc, MON, 540, "mina", "oliver")
    c2 = find(rc, MON, 660, "mina", "tess")
    c3 = find(rc, MON, 900, "oliver", "tess")
    c4 = find(rc, TUE, 600, "mina", "tess")
    c5 = find(rc, TUE, 840, "oliver", "tess")
    c6 = find(rc, WED, 570, "mina", "oliver")
    c7 = find(rc, WED, 780, "mina", "tess")
    c8 = find(rc, WED, 900, "oliver", "tess")
    c9 = find(rc, THU, 600, "mina", "oliver")
    c10 = find(rc, THU, 840, "mina", "tess")
    c11 = find(rc, FRI, 720, "oliver", "tess")
    c12 = find(rc, FRI, 540, "mina", "oliver")

    mon = [
        _act(460, 475, "Prep for Mina: wipe the whiteboard, lay out fresh markers, the printed agenda, and a full water carafe.", ["mina"], ["wp-mina-01", "wp-mina-02", "wp-mina-04"]),
        _act(475, 490, "Prep for Oliver: queue his ambient music, leave the blinds open, and restock the flip chart pads.", ["oliver"], ["wp-oliver-01", "wp-oliver-02", "wp-oliver-03"]),
        _act(480, 495, "Set the Sun room to 68 degrees for Mina's client sessions.", ["mina"], ["wp-mina-03"], resource=SUN, value=68.0),
        _act(480, 525, "Apple room: Mina's design one-on-one.", ["mina"], ["wp-mina-09"], resource=APPLE),
        _act(540, 600, "Sun room: Mina's Harlow account kickoff consultation.", ["mina"], ["wp-mina-13"], [c1], resource=SUN),
        _act(540, 600, "Apple room: Oliver's platform standup, moved from the Sun room for Mina's client kickoff.", ["oliver"], ["wp-oliver-13"], [c1], resource=APPLE),
        _act(660, 720, "Apple room: Mina's roadmap sync.", ["mina"], ["wp-mina-14"], [c2], resource=APPLE),
        _act(750, 795, "Sun room: Tess's proposal drafting.", ["tess"], ["wp-tess-09"], resource=SUN),
        _act(780, 840, "Apple room: Tess's campaign ideation, rescheduled after Mina's roadmap sync.", ["tess"], ["wp-tess-13"], [c2], resource=APPLE),
        _act(900, 960, "Sun room: Oliver's Nexbridge renewal consultation.", ["oliver"], ["wp-oliver-14"], [c3], resource=SUN),
        _act(900, 960, "Apple room: Tess's onboarding huddle, moved from the Sun room for Oliver's Nexbridge consultation.", ["tess"], ["wp-tess-14"], [c3], resource=APPLE),
        _act(985, 1000, "Warm the Apple room to 72 degrees for Tess.", ["tess"], ["wp-tess-02"], resource=APPLE, value=72.0),
        _act(990, 1035, "Sun room: Oliver's compliance paperwork.", ["oliver"], ["wp-oliver-09"], resource=SUN),
    ]
    tue = [
        _act(460, 475, "Prep for Tess: stock sticky notes and spare notebooks, stand the easel by the wall, and leave the window open a crack.", ["tess"], ["wp-tess-01", "wp-tess-04", "wp-tess-06", "wp-tess-05"]),
        _act(480, 525, "Apple room: Mina's sprint capacity notes.", ["mina"], ["wp-mina-10"], resource=APPLE),
        _act(510, 555, "Sun room: Oliver's portfolio triage.", ["oliver"], ["wp-oliver-10"], resource=SUN),
        _act(600, 660, "Sun room: Tess's Verity audit briefing.", ["tess"], ["wp-tess-15"], [c4], resource=SUN),
        _act(600, 660, "Apple room: Mina's growth experiments jam, moved from the Sun room for Tess's Verity briefing.", ["mina"], ["wp-mina-15"], [c4], resource=APPLE),
        _act(840, 900, "Apple room: Oliver's release retrospective.", ["oliver"], ["wp-oliver-15"], [c5], resource=APPLE),
        _act(930, 990, "Apple room: Tess's staffing huddle, rescheduled after Oliver's release retrospective.", ["tess"], ["wp-tess-16"], [c5], resource=APPLE),
        _act(960, 1020, "Sun room: Tess's hiring screens.", ["tess"], ["wp-tess-10"], resource=SUN),
    ]
    wed = [
        _act(460, 475, "Prep for Mina: run the screen share check, set out name placards, hang the quiet sign, and reset the room layout afterward.", ["mina"], ["wp-mina-05", "wp-mina-06", "wp-mina-07", "wp-mina-08"]),
        _act(480, 540, "Sun room: Mina's metrics review block.", ["mina"], ["wp-mina-11"], resource=SUN),
        _act(480, 540, "Apple room: Tess's client files audit.", ["tess"], ["wp-tess-11"], resource=APPLE),
        _act(570, 630, "Apple room: Mina's pricing sketch session.", ["mina"], ["wp-mina-16"], [c6], resource=APPLE),
        _act(660, 720, "Apple room: Oliver's logo riff session, rescheduled after Mina's pricing sketch.", ["oliver"], ["wp-oliver-16"], [c6], resource=APPLE),
        _act(780, 840, "Sun room: Tess's Calder estate consultation.", ["tess"], ["wp-tess-17"], [c7], resource=SUN),
        _act(780, 840, "Apple room: Mina's quarterly ops sync, moved from the Sun room for Tess's Calder consultation.", ["mina"], ["wp-mina-17"], [c7], resource=APPLE),
        _act(900, 990, "Sun room: Oliver's workshop storyboard session.", ["oliver"], ["wp-oliver-17"], [c8], resource=SUN),
        _act(900, 990, "Apple room: Tess's newsletter brainstorm, moved from the Sun room for Oliver's storyboard session.", ["tess"], ["wp-tess-18"], [c8], resource=APPLE),
    ]
    thu = [
        _act(460, 475, "Prep for Oliver: set the chairs in a circle, start the decaf pot, lay out the HDMI cable, print the recap template, and leave the door propped.", ["oliver"], ["wp-oliver-04", "wp-oliver-05", "wp-oliver-06", "wp-oliver-07", "wp-oliver-08"]),
        _act(480, 540, "Sun room: Tess's grant write-up.", ["tess"], ["wp-tess-12"], resource=SUN),
        _act(510, 570, "Apple room: Oliver's vendor sync.", ["oliver"], ["wp-oliver-11"], resource=APPLE),
        _act(600, 690, "Sun room: Oliver's Harwick portfolio consultation.", ["oliver"], ["wp-oliver-18"], [c9], resource=SUN),
        _act(600, 690, "Apple room: Mina's budget alignment, moved from the Sun room for Oliver's Harwick consultation.", ["mina"], ["wp-mina-18"], [c9], resource=APPLE),
        _act(840, 900, "Apple room: Mina's Linden contract review.", ["mina"], ["wp-mina-19"], [c10], resource=APPLE),
        _act(960, 1020, "Apple room: Tess's training plan sync, rescheduled after Mina's Linden review.", ["tess"], ["wp-tess-19"], [c10], resource=APPLE),
    ]
    fri = [
        _act(460, 475, "Prep for Tess: brew the herbal tea, refill the snack bowl, and set the timer cube on the table.", ["tess"], ["wp-tess-07", "wp-tess-08", "wp-tess-03"]),
        _act(480, 525, "Sun room: Oliver's expense approvals.", ["oliver"], ["wp-oliver-12"], resource=SUN),
        _act(540, 600, "Apple room: Oliver's offsite agenda riff.", ["oliver"], ["wp-oliver-19"], [c12], resource=APPLE),
        _act(630, 690, "Apple room: Mina's desk move logistics, rescheduled after Oliver's agenda riff.", ["mina"], ["wp-mina-20"], [c12], resource=APPLE),
        _act(720, 780, "Sun room: Tess's Mercer press consultation.", ["tess"], ["wp-tess-20"], [c11], resource=SUN),
        _act(720, 780, "Apple room: Oliver's sprint demo, moved from the Sun room for Tess's Mercer consultation.", ["oliver"], ["wp-oliver-20"], [c11], resource=APPLE),
        _act(900, 960, "Sun room: Mina's writing block.", ["mina"], ["wp-mina-12"], resource=SUN),
    ]
    days = (mon, tue, wed, thu, fri)
    return tuple(_day_plan(day, acts) for day, acts in zip(WORKWEEK, days))


def build_workplace() -> Scenario:
    """Three colleagues share the Sun and Apple rooms for a week.

    The Sun room is the bigger, preferred space. Room fights are settled
    by activity priority (client consultations first, then team meetings,
    then brainstorming, then everything else), alphabetical first name as
    the tiebreak, and displaced bookings walk down the room list.
    """
    policy = ResolutionPolicy(
        variant=PolicyVariant.ACTIVITY_PRIORITY,
        priority=(CLIENT_CONSULTATION, TEAM_MEETING, BRAINSTORMING, OTHER),
        tiebreak=PolicyVariant.ALPHABETICAL_FIRST_NAME,
        resource_order=(SUN, APPLE),
    )
    return _finish(
        "Workplace Scheduling",
        (("mina", "Mina"), ("oliver", "Oliver"), ("tess", "Tess")),
        _workplace_rules(),
        policy,
        _workplace_plans,
    )


# ---------------------------------------------------------------------------
# Assistive care: one robot, three residents, alphabetical service order


def _assistive_rules() -> list[Rule]:
    r: list[Rule] = []

    # Blaine: preferences 01-06, personal time 07-08, solo assistance
    # 09-12, contested assistance 13-20.
    r += [
        _pref("ac-blaine-01", "blaine", "Blaine wants his wake-up call to be a little sing-along rather than a plain announcement.", "sing-along"),
        _pref("ac-blaine-02", "blaine", "Blaine needs his walker placed within reach before any outing.", "walker"),
        _pref("ac-blaine-03", "blaine", "Blaine prefers the window seat saved for him at breakfast.", "window seat"),
        _pref("ac-blaine-04", "blaine", "Blaine takes his evening medication crushed into apple sauce.", "apple sauce"),
        _pref("ac-blaine-05", "blaine", "Blaine reads only large-print pages, so his daily schedule card should be large-print.", "large-print"),
        _pref("ac-blaine-06", "blaine", "Blaine likes an evening check-in even on quiet days.", "check-in"),
        _sched("ac-blaine-07", "blaine", "Blaine paints with the watercolor club on Tuesday from 14:00 to 15:30.", TUE, 840, 930, "watercolor club", "watercolor"),
        _sched("ac-blaine-08", "blaine", "Blaine has lunch with his nephew on Thursday from 12:00 to 13:00.", THU, 720, 780, "lunch with his nephew", "nephew"),
        _sched("ac-blaine-09", "blaine", "Blaine gets his wake-up call at 7:00 on Monday.", MON, 420, 435, "wake-up call", "wake-up call", cls=ASSISTANCE),
        _sched("ac-blaine-10", "blaine", "Blaine wants an escorted dinner walk on Tuesday at 17:00.", TUE, 1020, 1065, "dinner walk", "dinner walk", cls=ASSISTANCE),
        _sched("ac-blaine-11", "blaine", "Blaine starts Thursday with a morning stretch walk at 8:00.", THU, 480, 525, "morning stretch walk", "morning stretch", cls=ASSISTANCE),
        _sched("ac-blaine-12", "blaine", "Blaine needs a lunch escort to the dining hall on Friday at 12:00.", FRI, 720, 765, "lunch escort", "lunch escort", cls=ASSISTANCE),
        _sched("ac-blaine-13", "blaine", "Blaine walks the garden loop with support on Monday from 8:00 to 9:00.", MON, 480, 540, "garden loop walk", "garden loop", cls=ASSISTANCE),
        _sched("ac-blaine-14", "blaine", "Blaine needs his lunch tray and mobility help on Monday from 12:00 to 13:00.", MON, 720, 780, "lunch tray and mobility help", "lunch tray and mobility", cls=ASSISTANCE),
        _sched("ac-blaine-15", "blaine", "Blaine wants an escort to the communal breakfast on Tuesday from 9:00 to 10:00.", TUE, 540, 600, "communal breakfast escort", "communal breakfast", cls=ASSISTANCE),
        _sched("ac-blaine-16", "blaine", "Blaine takes a garden stroll with support on Wednesday from 8:00 to 9:00.", WED, 480, 540, "garden stroll", "garden stroll", cls=ASSISTANCE),
        _sched("ac-blaine-17", "blaine", "Blaine expects lunch companion service on Wednesday from 12:00 to 13:00.", WED, 720, 780, "lunch companion service", "lunch companion", cls=ASSISTANCE),
        _sched("ac-blaine-18", "blaine", "Blaine needs an escort to the book club on Thursday from 10:00 to 11:00.", THU, 600, 660, "book club escort", "book club", cls=ASSISTANCE),
        _sched("ac-blaine-19", "blaine", "Blaine hosts afternoon tea and needs social help on Thursday from 15:00 to 16:00.", THU, 900, 960, "afternoon tea social help", "afternoon tea", cls=ASSISTANCE),
        _sched("ac-blaine-20", "blaine", "Blaine wants help setting up for his family visit on Friday from 14:00 to 15:00.", FRI, 840, 900, "family visit setup", "family visit", cls=ASSISTANCE),
    ]

    # Ryan.
    r += [
        _pref("ac-ryan-01", "ryan", "Ryan wants the stretch band laid out before therapy sessions.", "stretch band"),
        _pref("ac-ryan-02", "ryan", "Ryan listens to an audiobook chapter during rest periods.", "audiobook"),
        _pref("ac-ryan-03", "ryan", "Ryan asks for ice water with every meal tray.", "ice water"),
        _pref("ac-ryan-04", "ryan", "Ryan wants his blood pressure logged after exercise.", "blood pressure"),
        _pref("ac-ryan-05", "ryan", "Ryan prefers the quiet corner of the lounge for reading.", "quiet corner"),
        _pref("ac-ryan-06", "ryan", "Ryan makes a weekly video call to his daughter and needs it set up.", "video call"),
        _sched("ac-ryan-07", "ryan", "Ryan joins the library reading circle on Monday from 10:00 to 11:30.", MON, 600, 690, "library reading circle", "reading circle"),
        _sched("ac-ryan-08", "ryan", "Ryan attends the chapel service on Wednesday from 8:00 to 9:00.", WED, 480, 540, "chapel service", "chapel"),
        _sched("ac-ryan-09", "ryan", "Ryan gets his dinner tray run at 17:00 on Monday.", MON, 1020, 1065, "dinner tray run", "dinner tray run", cls=ASSISTANCE),
        _sched("ac-ryan-10", "ryan", "Ryan asks for a wake-up knock at 7:00 on Tuesday.", TUE, 420, 435, "wake-up knock", "wake-up knock", cls=ASSISTANCE),
        _sched("ac-ryan-11", "ryan", "Ryan takes an afternoon walk around the courtyard on Wednesday at 15:00.", WED, 900, 945, "courtyard walk", "courtyard", cls=ASSISTANCE),
        _sched("ac-ryan-12", "ryan", "Ryan winds down Friday with an evening stroll at 17:00.", FRI, 1020, 1065, "evening stroll", "evening stroll", cls=ASSISTANCE),
        _sched("ac-ryan-13", "ryan", "Ryan needs a physio escort to the therapy wing on Monday from 8:00 to 9:00.", MON, 480, 540, "physio escort", "physio escort", cls=ASSISTANCE),
        _sched("ac-ryan-14", "ryan", "Ryan wants an escort to his art class on Monday from 15:00 to 16:00.", MON, 900, 960, "art class escort", "art class", cls=ASSISTANCE),
        _sched("ac-ryan-15", "ryan", "Ryan expects breakfast tray service on Tuesday from 9:00 to 10:00.", TUE, 540, 600, "breakfast tray service", "breakfast tray", cls=ASSISTANCE),
        _sched("ac-ryan-16", "ryan", "Ryan does his physical therapy walk on Tuesday from 14:00 to 15:00.", TUE, 840, 900, "physical therapy walk", "physical therapy walk", cls=ASSISTANCE),
        _sched("ac-ryan-17", "ryan", "Ryan wants his lunch tray delivery on Wednesday from 12:00 to 13:00.", WED, 720, 780, "lunch tray delivery", "lunch tray delivery", cls=ASSISTANCE),
        _sched("ac-ryan-18", "ryan", "Ryan needs a dinner escort to the dining hall on Wednesday from 17:00 to 18:00.", WED, 1020, 1080, "dinner escort", "dinner escort", cls=ASSISTANCE),
        _sched("ac-ryan-19", "ryan", "Ryan wants spotting for his stretching session on Thursday from 15:00 to 16:00.", THU, 900, 960, "stretching session", "stretching session", cls=ASSISTANCE),
        _sched("ac-ryan-20", "ryan", "Ryan takes his morning gym walk on Friday from 8:00 to 9:00.", FRI, 480, 540, "morning gym walk", "gym walk", cls=ASSISTANCE),
    ]

    # Susie values her independence; nearly everything is a drop-off.
    r += [
        _pref("ac-susie-01", "susie", "Susie wants every delivery left at her door, not handed over.", "left at"),
        _pref("ac-susie-02", "susie", "Susie asks for a knock twice signal so she knows something arrived.", "knock twice"),
        _pref("ac-susie-03", "susie", "Susie prefers that staff stay outside her room unless invited.", "stay outside"),
        _pref("ac-susie-04", "susie", "Susie wants notices slipped under the door instead of announced.", "under the door"),
        _pref("ac-susie-05", "susie", "Susie takes a tea tray in the afternoon, left outside like everything else.", "tea tray"),
        _pref("ac-susie-06", "susie", "Susie wants requests confirmed in writing rather than by voice.", "in writing"),
        _sched("ac-susie-07", "susie", "Susie keeps her morning crossword hour on Tuesday from 8:00 to 9:00.", TUE, 480, 540, "morning crossword hour", "crossword"),
        _sched("ac-susie-08", "susie", "Susie listens to her evening radio drama on Thursday from 17:00 to 18:00.", THU, 1020, 1080, "evening radio drama", "radio drama"),
        _sched("ac-susie-09", "susie", "Susie gets her morning paper drop at 7:30 on Monday.", MON, 450, 465, "morning paper drop", "morning paper", cls=ASSISTANCE),
        _sched("ac-susie-10", "susie", "Susie wants a lunch drop at the door on Tuesday at 12:00.", TUE, 720, 750, "lunch drop", "lunch drop", cls=ASSISTANCE),
        _sched("ac-susie-11", "susie", "Susie expects her craft kit delivery on Thursday at 14:00.", THU, 840, 870, "craft kit delivery", "craft kit", cls=ASSISTANCE),
        _sched("ac-susie-12", "susie", "Susie takes her Friday lunch drop at 13:00.", FRI, 780, 810, "friday lunch drop", "friday lunch", cls=ASSISTANCE),
        _sched("ac-susie-13", "susie", "Susie expects her lunch delivery at the door on Monday from 12:00 to 13:00.", MON, 720, 780, "lunch delivery", "lunch delivery", cls=ASSISTANCE),
        _sched("ac-susie-14", "susie", "Susie needs her pharmacy delivery run on Monday from 15:00 to 16:00.", MON, 900, 960, "pharmacy delivery run", "pharmacy", cls=ASSISTANCE),
        _sched("ac-susie-15", "susie", "Susie wants her grocery delivery drop on Tuesday from 14:00 to 15:00.", TUE, 840, 900, "grocery delivery drop", "grocery", cls=ASSISTANCE),
        _sched("ac-susie-16", "susie", "Susie expects the laundry pickup at her door on Wednesday from 8:00 to 9:00.", WED, 480, 540, "laundry pickup", "laundry", cls=ASSISTANCE),
        _sched("ac-susie-17", "susie", "Susie takes her dinner tray at the door on Wednesday from 17:00 to 18:00.", WED, 1020, 1080, "dinner tray drop", "dinner tray", cls=ASSISTANCE),
        _sched("ac-susie-18", "susie", "Susie has a parcel for sign-and-drop on Thursday from 10:00 to 11:00.", THU, 600, 660, "parcel sign-and-drop", "parcel", cls=ASSISTANCE),
        _sched("ac-susie-19", "susie", "Susie gets her newspaper and mail drop on Friday from 8:00 to 9:00.", FRI, 480, 540, "newspaper and mail drop", "newspaper", cls=ASSISTANCE),
        _sched("ac-susie-20", "susie", "Susie needs her package return picked up on Friday from 14:00 to 15:00.", FRI, 840, 900, "package return pickup", "package return", cls=ASSISTANCE),
    ]
    return r


def _assistive_plans(find: Finder) -> tuple[Plan, ...]:
    so = ConflictKind.SCHEDULE_OVERLAP
    a1 = find(so, MON, 480, "blaine", "ryan")
    a2 = find(so, MON, 720, "blaine", "susie")
    a3 = find(so, MON, 900, "ryan", "susie")
    a4 = find(so, TUE, 540, "blaine", "ryan")
    a5 = find(so, TUE, 840, "ryan", "susie")
    a6 = find(so, WED, 480, "blaine", "susie")
    a7 = find(so, WED, 720, "blaine", "ryan")
    a8 = find(so, WED, 1020, "ryan", "susie")
    a9 = find(so, THU, 600, "blaine", "susie")
    a10 = find(so, THU, 900, "blaine", "ryan")
    a11 = find(so, FRI, 480, "ryan", "susie")
    a12 = find(so, FRI, 840, "blaine", "susie")

    mon = [
        _act(420, 435, "Sing-along wake-up call for Blaine with his favorite tunes.", ["blaine"], ["ac-blaine-09", "ac-blaine-01"]),
        _act(440, 450, "Set Blaine's walker within reach and save his window seat for breakfast.", ["blaine"], ["ac-blaine-02", "ac-blaine-03"]),
        _act(450, 465, "Morning paper drop at Susie's door.", ["susie"], ["ac-susie-09"]),
        _act(480, 540, "Garden loop walk support for Blaine.", ["blaine"], ["ac-blaine-13"], [a1]),
        _act(600, 690, "Ryan at his library reading circle.", ["ryan"], ["ac-ryan-07"]),
        _act(700, 760, "Physio escort for Ryan to the therapy wing, shifted after Blaine's garden walk.", ["ryan"], ["ac-ryan-13"], [a1]),
        _act(720, 780, "Lunch tray and mobility help for Blaine.", ["blaine"], ["ac-blaine-14"], [a2]),
        _act(800, 860, "Lunch delivery left at Susie's door, knock twice and stay outside, moved after Blaine's lunch help.", ["susie"], ["ac-susie-13", "ac-susie-01", "ac-susie-02", "ac-susie-03"], [a2]),
        _act(900, 960, "Escort Ryan to his art class.", ["ryan"], ["ac-ryan-14"], [a3]),
        _act(980, 1040, "Pharmacy delivery run for Susie, rescheduled after Ryan's art class.", ["susie"], ["ac-susie-14"], [a3]),
        _act(1020, 1065, "Dinner tray run for Ryan.", ["ryan"], ["ac-ryan-09"]),
        _act(1140, 1150, "Crush Blaine's evening meds into apple sauce, print his large-print schedule card, and do the nightly check-in.", ["blaine"], ["ac-blaine-04", "ac-blaine-05", "ac-blaine-06"]),
    ]
    tue = [
        _act(420, 435, "Wake-up knock for Ryan.", ["ryan"], ["ac-ryan-10"]),
        _act(480, 540, "Susie's morning crossword hour, undisturbed.", ["susie"], ["ac-susie-07"]),
        _act(540, 600, "Escort Blaine to the communal breakfast.", ["blaine"], ["ac-blaine-15"], [a4]),
        _act(600, 615, "Lay out Ryan's stretch band and queue the next audiobook chapter.", ["ryan"], ["ac-ryan-01", "ac-ryan-02"]),
        _act(620, 680, "Breakfast tray service for Ryan, moved after Blaine's breakfast escort.", ["ryan"], ["ac-ryan-15"], [a4]),
        _act(700, 710, "Slip the activity notice under the door for Susie, confirm it in writing, and leave her tea tray outside.", ["susie"], ["ac-susie-04", "ac-susie-06", "ac-susie-05"]),
        _act(720, 750, "Lunch drop at the door for Susie.", ["susie"], ["ac-susie-10"]),
        _act(840, 900, "Physical therapy walk with Ryan.", ["ryan"], ["ac-ryan-16"], [a5]),
        _act(840, 930, "Blaine at his watercolor club.", ["blaine"], ["ac-blaine-07"]),
        _act(920, 980, "Grocery delivery drop for Susie, rescheduled after Ryan's therapy walk.", ["susie"], ["ac-susie-15"], [a5]),
        _act(1020, 1065, "Escorted dinner walk for Blaine.", ["blaine"], ["ac-blaine-10"]),
    ]
    wed = [
        _act(480, 540, "Garden stroll support for Blaine.", ["blaine"], ["ac-blaine-16"], [a6]),
        _act(480, 540, "Ryan at the chapel service.", ["ryan"], ["ac-ryan-08"]),
        _act(600, 660, "Laundry pickup at Susie's door, moved after Blaine's garden stroll.", ["susie"], ["ac-susie-16"], [a6]),
        _act(720, 780, "Lunch companion service for Blaine.", ["blaine"], ["ac-blaine-17"], [a7]),
        _act(800, 860, "Lunch tray delivery for Ryan, moved after Blaine's lunch service.", ["ryan"], ["ac-ryan-17"], [a7]),
        _act(900, 945, "Afternoon walk around the courtyard with Ryan.", ["ryan"], ["ac-ryan-11"]),
        _act(960, 990, "Put ice water on Ryan's tray, log his blood pressure, reserve the quiet corner, and set up his video call.", ["ryan"], ["ac-ryan-03", "ac-ryan-04", "ac-ryan-05", "ac-ryan-06"]),
        _act(1020, 1080, "Dinner escort for Ryan to the dining hall.", ["ryan"], ["ac-ryan-18"], [a8]),
        _act(1100, 1160, "Dinner tray left at Susie's door, moved after Ryan's dinner escort.", ["susie"], ["ac-susie-17"], [a8]),
    ]
    thu = [
        _act(480, 525, "Morning stretch walk with Blaine.", ["blaine"], ["ac-blaine-11"]),
        _act(600, 660, "Escort Blaine to the book club.", ["blaine"], ["ac-blaine-18"], [a9]),
        _act(680, 740, "Parcel sign-and-drop for Susie, moved after Blaine's book club escort.", ["susie"], ["ac-susie-18"], [a9]),
        _act(720, 780, "Blaine at lunch with his nephew.", ["blaine"], ["ac-blaine-08"]),
        _act(840, 870, "Craft kit delivery for Susie.", ["susie"], ["ac-susie-11"]),
        _act(900, 960, "Afternoon tea social help for Blaine.", ["blaine"], ["ac-blaine-19"], [a10]),
        _act(980, 1040, "Spot Ryan's stretching session, moved after Blaine's afternoon tea.", ["ryan"], ["ac-ryan-19"], [a10]),
        _act(1020, 1080, "Susie's evening radio drama, notices only.", ["susie"], ["ac-susie-08"]),
    ]
    fri = [
        _act(480, 540, "Morning gym walk with Ryan.", ["ryan"], ["ac-ryan-20"], [a11]),
        _act(560, 620, "Newspaper and mail drop for Susie, moved after Ryan's gym walk.", ["susie"], ["ac-susie-19"], [a11]),
        _act(720, 765, "Lunch escort for Blaine to the dining hall.", ["blaine"], ["ac-blaine-12"]),
        _act(780, 810, "Friday lunch drop at Susie's door.", ["susie"], ["ac-susie-12"]),
        _act(840, 900, "Family visit setup help for Blaine.", ["blaine"], ["ac-blaine-20"], [a12]),
        _act(920, 980, "Package return pickup for Susie, rescheduled after Blaine's family visit setup.", ["susie"], ["ac-susie-20"], [a12]),
        _act(1020, 1065, "Evening stroll with Ryan.", ["ryan"], ["ac-ryan-12"]),
    ]
    days = (mon, tue, wed, thu, fri)
    return tuple(_day_plan(day, acts) for day, acts in zip(WORKWEEK, days))


def build_assistive_care() -> Scenario:
    """One care robot serves three residents; only one place at a time.

    When two residents need hands-on assistance in the same window, the
    robot serves them in alphabetical order of first name and shifts the
    other request to the next free slot.
    """
    policy = ResolutionPolicy(variant=PolicyVariant.ALPHABETICAL_FIRST_NAME)
    return _finish(
        "Assistive Care Robot",
        (("blaine", "Blaine"), ("ryan", "Ryan"), ("susie", "Susie")),
        _assistive_rules(),
        policy,
        _assistive_plans,
    )


# ---------------------------------------------------------------------------
# Smart home: one thermostat, three housemates, escalation policy


STUDY = "study"
GYM = "gym"
LIVING = "living_room"
KITCHEN = "kitchen"
HOUSE = "house"


def _smarthome_rules() -> list[Rule]:
    r: list[Rule] = []

    def cap(rule_id: str, day: Weekday, day_name: str) -> Rule:
        return _temp_pref(
            rule_id, "felix",
            f"Felix caps the thermostat at 70 degrees Fahrenheit on {day_name} between 8:00 and 18:00 to keep the electricity bill down.",
            LE, 70.0, None,
            condition=TimeWindow(480, 1080, day),
            checker=_setting_check(HOUSE, LE, 70.0, day=day),
        )

    def study_need(rule_id: str, day: Weekday, day_name: str, start: int, end: int, span: str) -> Rule:
        return _temp_pref(
            rule_id, "dana",
            f"Dana needs the study at 74 degrees Fahrenheit or warmer during her {day_name} work block from {span}.",
            GE, 74.0, STUDY,
            condition=TimeWindow(start, end, day),
            checker=_setting_check(STUDY, GE, 74.0, day=day, overlaps=(start, end)),
        )

    def gym_need(rule_id: str, day: Weekday, day_name: str, start: int, end: int, span: str) -> Rule:
        return _temp_pref(
            rule_id, "marco",
            f"Marco heats the home gym to at least 78 degrees for his {day_name} session from {span}.",
            GE, 78.0, GYM,
            condition=TimeWindow(start, end, day),
            checker=_setting_check(GYM, GE, 78.0, day=day, overlaps=(start, end)),
        )

    # Dana: preferences 01-05, weekly schedule 06-11, the house default
    # 12, temperature needs 13-20.
    r += [
        _pref("sh-dana-01", "dana", "Dana wants fresh coffee brewed when her work block starts.", "fresh coffee"),
        _pref("sh-dana-02", "dana", "Dana works by the desk lamp rather than the ceiling light.", "desk lamp"),
        _pref("sh-dana-03", "dana", "Dana puts a do-not-disturb sign on the study door while working.", "do-not-disturb"),
        _pref("sh-dana-04", "dana", "Dana keeps a reading blanket on her chair in the cooler months.", "reading blanket"),
        _pref("sh-dana-05", "dana", "Dana runs a humidifier in the study when the heat is on.", "humidifier"),
        _sched("sh-dana-06", "dana", "Dana does a remote work sprint in the study on Monday from 9:00 to 13:00.", MON, 540, 780, "remote work sprint", "remote work sprint"),
        _sched("sh-dana-07", "dana", "Dana drafts her dissertation in the study on Tuesday from 9:00 to 13:00.", TUE, 540, 780, "dissertation drafting", "dissertation"),
        _sched("sh-dana-08", "dana", "Dana takes seminar calls in the study on Wednesday from 10:00 to 14:00.", WED, 600, 840, "seminar calls", "seminar"),
        _sched("sh-dana-09", "dana", "Dana pushes on grant deadline work on Thursday from 9:00 to 13:00.", THU, 540, 780, "grant deadline work", "grant deadline"),
        _sched("sh-dana-10", "dana", "Dana does her remote work wrap-up on Friday from 9:00 to 13:00.", FRI, 540, 780, "remote work wrap-up", "wrap-up"),
        _sched("sh-dana-11", "dana", "Dana hosts movie night in the living room on Friday from 19:00 to 21:00.", FRI, 1140, 1260, "movie night", "movie night"),
        _policy_rule("sh-dana-12", "dana", "The housemates agreed that 70 degrees Fahrenheit is the normal setting for the house, and Dana goes along with that outside her work hours.", _setting_check(HOUSE, EQ, 70.0)),
        study_need("sh-dana-13", MON, "Monday", 540, 780, "9:00 to 13:00"),
        study_need("sh-dana-14", TUE, "Tuesday", 540, 780, "9:00 to 13:00"),
        study_need("sh-dana-15", WED, "Wednesday", 600, 840, "10:00 to 14:00"),
        study_need("sh-dana-16", THU, "Thursday", 540, 780, "9:00 to 13:00"),
        study_need("sh-dana-17", FRI, "Friday", 540, 780, "9:00 to 13:00"),
        _temp_pref(
            "sh-dana-18", "dana",
            "Dana wants the living room at 72 degrees or warmer for Friday movie night from 19:00 to 21:00.",
            GE, 72.0, LIVING,
            condition=TimeWindow(1140, 1260, FRI),
            checker=_setting_check(LIVING, GE, 72.0, day=FRI, overlaps=(1140, 1260)),
        ),
        _temp_pref(
            "sh-dana-19", "dana",
            "Dana heats the living room to at least 75 degrees for Wednesday evening yoga from 18:00 to 19:30.",
            GE, 75.0, LIVING,
            condition=TimeWindow(1080, 1170, WED),
            checker=_setting_check(LIVING, GE, 75.0, day=WED, overlaps=(1080, 1170)),
        ),
        _temp_pref(
            "sh-dana-20", "dana",
            "Dana bakes on Tuesday evening and wants the kitchen at 73 degrees or warmer from 18:00 to 20:00.",
            GE, 73.0, KITCHEN,
            condition=TimeWindow(1080, 1200, TUE),
            checker=_setting_check(KITCHEN, GE, 73.0, day=TUE, overlaps=(1080, 1200)),
        ),
    ]

    # Felix: preferences 01-07, weekly schedule 08-14, the house default
    # 15, daytime caps 16-20.
    r += [
        _pref("sh-felix-01", "felix", "Felix prints the weekly energy report and reviews every degree-hour.", "energy report"),
        _pref("sh-felix-02", "felix", "Felix switches the thermostat to eco mode overnight.", "eco mode"),
        _pref("sh-felix-03", "felix", "Felix wants the vents closed in rooms nobody is using.", "vents"),
        _pref("sh-felix-04", "felix", "Felix keeps a written thermostat schedule taped by the panel.", "thermostat schedule"),
        _pref("sh-felix-05", "felix", "Felix replaces the furnace filter monthly and wants the filter check logged.", "filter check"),
        _pref("sh-felix-06", "felix", "Felix inspects the window seals before each cold snap.", "window seals"),
        _pref("sh-felix-07", "felix", "Felix posts the utility split on the fridge after each bill.", "utility split"),
        _sched("sh-felix-08", "felix", "Felix works his bookkeeping shift at the dining table on Monday from 8:00 to 16:00.", MON, 480, 960, "bookkeeping shift", "bookkeeping"),
        _sched("sh-felix-09", "felix", "Felix works his bookkeeping shift at the dining table on Tuesday from 8:00 to 16:00.", TUE, 480, 960, "bookkeeping shift", "bookkeeping"),
        _sched("sh-felix-10", "felix", "Felix works his bookkeeping shift at the dining table on Wednesday from 8:00 to 16:00.", WED, 480, 960, "bookkeeping shift", "bookkeeping"),
        _sched("sh-felix-11", "felix", "Felix works his bookkeeping shift at the dining table on Thursday from 8:00 to 16:00.", THU, 480, 960, "bookkeeping shift", "bookkeeping"),
        _sched("sh-felix-12", "felix", "Felix works his bookkeeping shift at the dining table on Friday from 8:00 to 16:00.", FRI, 480, 960, "bookkeeping shift", "bookkeeping"),
        _sched("sh-felix-13", "felix", "Felix hosts board games night on Tuesday from 19:00 to 21:00.", TUE, 1140, 1260, "board games night", "board games"),
        _sched("sh-felix-14", "felix", "Felix does his meter reading round on Thursday from 18:00 to 19:00.", THU, 1080, 1140, "meter reading round", "meter reading"),
        _policy_rule("sh-felix-15", "felix", "Felix insists on the house agreement: 70 degrees Fahrenheit is the normal setting, because the heating bill is split evenly.", _setting_check(HOUSE, EQ, 70.0)),
        cap("sh-felix-16", MON, "Monday"),
        cap("sh-felix-17", TUE, "Tuesday"),
        cap("sh-felix-18", WED, "Wednesday"),
        cap("sh-felix-19", THU, "Thursday"),
        cap("sh-felix-20", FRI, "Friday"),
    ]

    # Marco: preferences 01-06, weekly schedule 07-12, the house meeting
    # 13, temperature pushes 14-20.
    r += [
        _pref("sh-marco-01", "marco", "Marco wants his gym towel waiting on the rack.", "gym towel"),
        _pref("sh-marco-02", "marco", "Marco queues his workout playlist before training.", "workout playlist"),
        _pref("sh-marco-03", "marco", "Marco runs the cooldown fan for ten minutes after lifting.", "cooldown fan"),
        _pref("sh-marco-04", "marco", "Marco blends a protein shake right after each session.", "protein shake"),
        _pref("sh-marco-05", "marco", "Marco stocks party snacks before hosting on Friday.", "party snacks"),
        _pref("sh-marco-06", "marco", "Marco does a cleanup sweep of shared rooms after his guests leave.", "cleanup sweep"),
        _sched("sh-marco-07", "marco", "Marco lifts in the home gym on Monday from 10:00 to 11:30.", MON, 600, 690, "gym session", "gym session"),
        _sched("sh-marco-08", "marco", "Marco lifts in the home gym on Tuesday from 10:00 to 11:30.", TUE, 600, 690, "gym session", "gym session"),
        _sched("sh-marco-09", "marco", "Marco lifts in the home gym on Wednesday from 12:00 to 13:30.", WED, 720, 810, "gym session", "gym session"),
        _sched("sh-marco-10", "marco", "Marco lifts in the home gym on Friday from 10:00 to 11:30.", FRI, 600, 690, "gym session", "gym session"),
        _sched("sh-marco-11", "marco", "Marco sets up for his Friday party from 18:00 to 19:00.", FRI, 1080, 1140, "party setup", "party setup"),
        _sched("sh-marco-12", "marco", "Marco watches his documentary marathon on Wednesday from 18:00 to 20:00.", WED, 1080, 1200, "documentary marathon", "documentary"),
        _policy_rule("sh-marco-13", "marco", "Marco agreed that temperature disputes get flagged for the Sunday house meeting instead of thermostat wars.", Predicate(kind="action", user="marco", contains=("house meeting",))),
        gym_need("sh-marco-14", MON, "Monday", 600, 690, "10:00 to 11:30"),
        gym_need("sh-marco-15", TUE, "Tuesday", 600, 690, "10:00 to 11:30"),
        gym_need("sh-marco-16", WED, "Wednesday", 720, 810, "12:00 to 13:30"),
        gym_need("sh-marco-17", FRI, "Friday", 600, 690, "10:00 to 11:30"),
        _temp_pref(
            "sh-marco-18", "marco",
            "Marco keeps the living room at 64 degrees or cooler while hosting Friday game night from 19:00 to 22:00.",
            LE, 64.0, LIVING,
            condition=TimeWindow(1140, 1320, FRI),
            checker=_setting_check(LIVING, LE, 64.0, day=FRI, overlaps=(1260, 1320)),
        ),
        _temp_pref(
            "sh-marco-19", "marco",
            "Marco wants the living room no warmer than 68 degrees for Wednesday documentary night from 18:00 to 20:00.",
            LE, 68.0, LIVING,
            condition=TimeWindow(1080, 1200, WED),
            checker=_setting_check(LIVING, LE, 68.0, day=WED, overlaps=(1170, 1200)),
        ),
        _temp_pref(
            "sh-marco-20", "marco",
            "Marco chills the kitchen to 67 degrees or cooler for Tuesday meal prep from 19:00 to 21:00.",
            LE, 67.0, KITCHEN,
            condition=TimeWindow(1140, 1260, TUE),
            checker=_setting_check(KITCHEN, LE, 67.0, day=TUE, overlaps=(1200, 1260)),
        ),
    ]
    return r


def _smarthome_plans(find: Finder) -> tuple[Plan, ...]:
    cc = ConflictKind.CONSTRAINT_CONTRADICTION
    df = {
        MON: find(cc, MON, 540, "dana", "felix"),
        TUE: find(cc, TUE, 540, "dana", "felix"),
        WED: find(cc, WED, 600, "dana", "felix"),
        THU: find(cc, THU, 540, "dana", "felix"),
        FRI: find(cc, FRI, 540, "dana", "felix"),
    }
    mf = {
        MON: find(cc, MON, 600, "felix", "marco"),
        TUE: find(cc, TUE, 600, "felix", "marco"),
        WED: find(cc, WED, 720, "felix", "marco"),
        FRI: find(cc, FRI, 600, "felix", "marco"),
    }
    dm_kitchen = find(cc, TUE, 1140, "dana", "marco")
    dm_yoga = find(cc, WED, 1080, "dana", "marco")
    dm_movie = find(cc, FRI, 1140, "dana", "marco")

    caps = {MON: "sh-felix-16", TUE: "sh-felix-17", WED: "sh-felix-18", THU: "sh-felix-19", FRI: "sh-felix-20"}
    bookkeeping = {MON: "sh-felix-08", TUE: "sh-felix-09", WED: "sh-felix-10", THU: "sh-felix-11", FRI: "sh-felix-12"}

    def house(day: Weekday) -> PlanAction:
        return _act(480, 1080, "Hold the whole-house default at 70 degrees.", ["felix"], [caps[day], "sh-dana-12", "sh-felix-15"], resource=HOUSE, value=70.0)

    mon = [
        _act(470, 480, "Print Felix's weekly energy report and refresh the thermostat schedule by the panel.", ["felix"], ["sh-felix-01", "sh-felix-04"]),
        _act(480, 960, "Felix's bookkeeping shift at the dining table.", ["felix"], [bookkeeping[MON]]),
        house(MON),
        _act(535, 545, "Brew Dana's fresh coffee, switch on the desk lamp, and hang the do-not-disturb sign on the study door.", ["dana"], ["sh-dana-01", "sh-dana-02", "sh-dana-03"]),
        _act(540, 780, "Dana's remote work sprint in the study.", ["dana"], ["sh-dana-06"]),
        _act(540, 780, "Warm the study to 74 degrees for Dana's work block while the housemates talk it over.", ["dana"], ["sh-dana-13"], [df[MON]], resource=STUDY, value=74.0),
        _act(590, 600, "Hang Marco's gym towel and queue his workout playlist.", ["marco"], ["sh-marco-01", "sh-marco-02"]),
        _act(600, 690, "Marco's gym session in the home gym.", ["marco"], ["sh-marco-07"]),
        _act(600, 690, "Heat the home gym to 78 degrees for Marco's session, pending the house discussion.", ["marco"], ["sh-marco-14"], [mf[MON]], resource=GYM, value=78.0),
        _act(690, 700, "Run the cooldown fan and blend Marco's protein shake.", ["marco"], ["sh-marco-03", "sh-marco-04"]),
    ]
    tue = [
        _act(480, 960, "Felix's bookkeeping shift at the dining table.", ["felix"], [bookkeeping[TUE]]),
        house(TUE),
        _act(540, 780, "Dana's dissertation drafting in the study.", ["dana"], ["sh-dana-07"]),
        _act(540, 780, "Warm the study to 74 degrees for Dana's work block while the housemates talk it over.", ["dana"], ["sh-dana-14"], [df[TUE]], resource=STUDY, value=74.0),
        _act(600, 690, "Marco's gym session in the home gym.", ["marco"], ["sh-marco-08"]),
        _act(600, 690, "Heat the home gym to 78 degrees for Marco's session, pending the house discussion.", ["marco"], ["sh-marco-15"], [mf[TUE]], resource=GYM, value=78.0),
        _act(1080, 1200, "Hold the kitchen at 73 degrees for Dana's baking, then hand it over.", ["dana"], ["sh-dana-20"], [dm_kitchen], resource=KITCHEN, value=73.0),
        _act(1140, 1260, "Felix hosts board games night.", ["felix"], ["sh-felix-13"]),
        _act(1200, 1260, "Drop the kitchen to 67 degrees for the tail of Marco's meal prep.", ["marco"], ["sh-marco-20"], resource=KITCHEN, value=67.0),
    ]
    wed = [
        _act(480, 960, "Felix's bookkeeping shift at the dining table.", ["felix"], [bookkeeping[WED]]),
        house(WED),
        _act(600, 840, "Dana's seminar calls in the study.", ["dana"], ["sh-dana-08"]),
        _act(600, 840, "Warm the study to 74 degrees for Dana's work block while the housemates talk it over.", ["dana"], ["sh-dana-15"], [df[WED]], resource=STUDY, value=74.0),
        _act(720, 810, "Marco's gym session in the home gym.", ["marco"], ["sh-marco-09"]),
        _act(720, 810, "Heat the home gym to 78 degrees for Marco's session, pending the house discussion.", ["marco"], ["sh-marco-16"], [mf[WED]], resource=GYM, value=78.0),
        _act(1080, 1170, "Warm the living room to 75 degrees for Dana's yoga hour, as discussed.", ["dana"], ["sh-dana-19"], [dm_yoga], resource=LIVING, value=75.0),
        _act(1080, 1200, "Marco's documentary marathon in the living room.", ["marco"], ["sh-marco-12"]),
        _act(1170, 1200, "Cool the living room to 68 degrees for the rest of Marco's documentary.", ["marco"], ["sh-marco-19"], resource=LIVING, value=68.0),
    ]
    thu = [
        _act(480, 960, "Felix's bookkeeping shift at the dining table.", ["felix"], [bookkeeping[THU]]),
        house(THU),
        _act(530, 540, "Lay Dana's reading blanket on the chair and top up the study humidifier.", ["dana"], ["sh-dana-04", "sh-dana-05"]),
        _act(540, 780, "Dana's grant deadline work in the study.", ["dana"], ["sh-dana-09"]),
        _act(540, 780, "Warm the study to 74 degrees for Dana's work block while the housemates talk it over.", ["dana"], ["sh-dana-16"], [df[THU]], resource=STUDY, value=74.0),
        _act(1080, 1140, "Felix's meter reading round.", ["felix"], ["sh-felix-14"]),
    ]
    fri = [
        _act(480, 960, "Felix's bookkeeping shift at the dining table.", ["felix"], [bookkeeping[FRI]]),
        house(FRI),
        _act(540, 780, "Dana's remote work wrap-up in the study.", ["dana"], ["sh-dana-10"]),
        _act(540, 780, "Warm the study to 74 degrees for Dana's work block while the housemates talk it over.", ["dana"], ["sh-dana-17"], [df[FRI]], resource=STUDY, value=74.0),
        _act(600, 690, "Marco's gym session in the home gym.", ["marco"], ["sh-marco-10"]),
        _act(600, 690, "Heat the home gym to 78 degrees for Marco's session, pending the house discussion.", ["marco"], ["sh-marco-17"], [mf[FRI]], resource=GYM, value=78.0),
        _act(1070, 1080, "Stock Marco's party snacks and plan the cleanup sweep for after the guests leave.", ["marco"], ["sh-marco-05", "sh-marco-06"]),
        _act(1080, 1095, "Switch on eco mode for the night, close the vents in the guest room, log the filter check, inspect the window seals, and post the utility split.", ["felix"], ["sh-felix-02", "sh-felix-03", "sh-felix-05", "sh-felix-06", "sh-felix-07"]),
        _act(1080, 1140, "Marco's party setup in the living room.", ["marco"], ["sh-marco-11"]),
        _act(1140, 1260, "Dana's movie night in the living room.", ["dana"], ["sh-dana-11"]),
        _act(1140, 1260, "Keep the living room at 72 degrees through Dana's movie night, per the standing compromise.", ["dana"], ["sh-dana-18"], [dm_movie], resource=LIVING, value=72.0),
        _act(1260, 1320, "Drop the living room to 64 degrees for Marco's game night crowd.", ["marco"], ["sh-marco-18"], resource=LIVING, value=64.0),
        _act(1320, 1335, "Collect the week's temperature disagreements for the Sunday house meeting.", ["dana", "felix", "marco"], ["sh-marco-13"]),
    ]
    days = (mon, tue, wed, thu, fri)
    return tuple(_day_plan(day, acts) for day, acts in zip(WORKWEEK, days))


def build_smarthome() -> Scenario:
    """Three housemates fight over one thermostat.

    Nobody outranks anybody: every temperature contradiction is escalated
    to the weekly house discussion, and the reference week records the
    compromise settings while flagging each disagreement.
    """
    policy = ResolutionPolicy(variant=PolicyVariant.ESCALATE_TO_DISCUSSION)
    return _finish(
        "Smart-home Temperature Control",
        (("dana", "Dana"), ("felix", "Felix"), ("marco", "Marco")),
        _smarthome_rules(),
        policy,
        _smarthome_plans,
    )


BUILDERS: dict[str, Callable[[], Scenario]] = {
    "workplace": build_workplace,
    "assistive_care": build_assistive_care,
    "smarthome": build_smarthome,
}


def build_bundled(name: str) -> Scenario:
    """Rebuild a bundled scenario from source tables."""
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown bundled scenario {name!r} (known: {', '.join(BUILDERS)})") from None
    return builder()


__all__ = [
    "BUILDERS",
    "build_bundled",
    "build_workplace",
    "build_assistive_care",
    "build_smarthome",
]
