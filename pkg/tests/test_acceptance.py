"""Acceptance checks for the shipped guarantees, one test per criterion.

Each test asserts its criterion at the stated tolerance and then prints a
single PASS line on the real stdout (so the line survives pytest's
capture); a failing criterion shows up as an ordinary pytest failure.
"""

from __future__ import annotations

import random
import time

import jsonschema
import pytest

from concord.agents import (
    FieldStatus,
    NO_ANSWER,
    RETRY_BUDGET,
    SHEET_SCHEMA,
    manager_collect,
)
from concord.conflicts import detect_conflicts, validate_plan
from concord.docstore import (
    HashedBagOfWordsEmbedder,
    hybrid_retrieve,
    ingest,
    semantic_search,
)
from concord.evalharness import (
    BackendConfig,
    Condition,
    EvalConfig,
    report_csv,
    run_condition,
    run_full,
)
from concord.gateway import Message, Role, ScriptedBackend
from concord.model import (
    CLIENT_CONSULTATION,
    Comparator,
    OTHER,
    TEAM_MEETING,
    TimeWindow,
    Weekday,
)
from concord.orchestrator import (
    AgentSpec,
    MaxTurnsExceeded,
    Orchestrator,
    ProtocolDeviation,
)
from concord.scenarios import BUNDLED_NAMES, load_bundled

from bruteforce import canon, oracle_conflicts
from conftest import mk_scenario, pref_rule, sched_rule

EMB = HashedBagOfWordsEmbedder()


def announce(capsys, label: str, detail: str) -> None:
    with capsys.disabled():
        print(f"PASS {label}: {detail}")


# ---------------------------------------------------------------------------
# 1. end-to-end scripted replay


def test_replay_scores_full_marks_fast_and_reproducibly(capsys):
    config = EvalConfig(
        scenarios=tuple(BUNDLED_NAMES),
        condition=Condition.MULTI_AGENT,
        trials=3,
        backend=BackendConfig(kind="reference"),
    )
    started = time.monotonic()
    first = run_condition(config)
    second = run_condition(config)
    elapsed = time.monotonic() - started
    assert elapsed < 60.0
    for name in BUNDLED_NAMES:
        result = first.result_for(name, Condition.MULTI_AGENT)
        assert result.retrieval_pct == 100.0
        assert result.conflict_pct == 100.0
        for trial in result.trials:
            # [PAPER] 60 rules and 12 conflicts per scenario.
            assert trial.satisfied == 60
            assert trial.resolved == 12
    assert first.instances == 45
    assert first.to_json() == second.to_json()
    announce(
        capsys,
        "end-to-end-replay",
        f"3 scenarios at retrieval 100% and conflict 100%; "
        f"2x45 instances in {elapsed:.2f}s, bit-identical reports",
    )


# ---------------------------------------------------------------------------
# 2. scenario anchoring


def test_bundled_scenarios_anchor_the_engine(capsys):
    for name in BUNDLED_NAMES:
        scenario = load_bundled(name)
        conflicts = detect_conflicts(scenario)
        # [PAPER] each setup seeds exactly 12 conflicts across 60 rules.
        assert len(conflicts) == 12
        assert conflicts == scenario.reference.conflicts
        report = validate_plan(scenario.reference.plans, scenario)
        assert report.violations == ()
    announce(
        capsys,
        "scenario-anchoring",
        "detect_conflicts reproduces all 12 reference conflicts per scenario; "
        "reference weeks validate with 0 violations",
    )


# ---------------------------------------------------------------------------
# 3. conflict-engine oracle equivalence


USERS = ["ua", "ub", "uc", "ud", "ue"]
DAYS = [Weekday.MON, Weekday.TUE, Weekday.WED]
CLASSES = [OTHER, TEAM_MEETING, CLIENT_CONSULTATION, "assistance"]
RESOURCES = [None, "sun_room", "apple_room", "den"]
ZONES = [None, "gym", "den"]


def random_rules(rng: random.Random) -> list:
    rules = []
    for i in range(rng.randint(0, 26)):
        start = rng.randint(0, 22) * 60
        end = rng.randint(start // 60 + 1, 23) * 60
        rules.append(
            sched_rule(
                f"s{i}",
                rng.choice(USERS),
                rng.choice(DAYS),
                start,
                end,
                activity_class=rng.choice(CLASSES),
                resource=rng.choice(RESOURCES),
            )
        )
    for i in range(rng.randint(0, 14)):
        condition = None
        if rng.random() < 0.5:
            start = rng.randint(0, 22) * 60
            end = rng.randint(start // 60 + 1, 23) * 60
            condition = TimeWindow(
                start=start, end=end, day=rng.choice([None] + DAYS)
            )
        rules.append(
            pref_rule(
                f"p{i}",
                rng.choice(USERS),
                comparator=rng.choice(list(Comparator)),
                value=float(rng.choice([60, 70, 75, 80])),
                zone=rng.choice(ZONES),
                condition=condition,
            )
        )
    return rules


def test_engine_equals_bruteforce_oracle_on_500_instances(capsys):
    # [DERIVED] the per-minute bitmap oracle is computed independently of
    # the sweep engine; equality is exact, not approximate.
    rng = random.Random(20260816)
    max_rules = 0
    for _ in range(500):
        rules = random_rules(rng)
        max_rules = max(max_rules, len(rules))
        assert len(rules) <= 40
        scenario = mk_scenario(rules)
        got = canon(detect_conflicts(scenario))
        assert got == oracle_conflicts(scenario)
        shuffled = list(rules)
        rng.shuffle(shuffled)
        assert canon(detect_conflicts(mk_scenario(shuffled))) == got
    announce(
        capsys,
        "conflict-oracle",
        f"500 random rule sets (up to {max_rules} rules, 5 users) match the "
        "brute-force oracle exactly, permutation-invariant on every instance",
    )


# ---------------------------------------------------------------------------
# 4. retrieval oracle equivalence


VOCAB = [
    "maple", "river", "stone", "lantern", "cedar", "harbor", "meadow",
    "quarry", "willow", "ember", "ridge", "fern", "saddle", "cobble",
]
RARE = ["zephyrine", "quixotic", "vermilion", "obsidian"]


def test_semantic_search_equals_cosine_scan_and_hybrid_finds_plants(capsys):
    rng = random.Random(4711)
    for _ in range(200):
        docs = {}
        for i in range(rng.randint(1, 40)):
            length = rng.randint(3, 400) if rng.random() < 0.1 else rng.randint(3, 60)
            docs[f"d{i:03d}"] = " ".join(rng.choices(VOCAB, k=length))
        store = ingest(docs, EMB)
        assert len(store) <= 200
        query = " ".join(rng.choices(VOCAB, k=rng.randint(1, 5)))
        k = rng.randint(1, 10)
        got = [r.chunk_id for r in semantic_search(store, query, k=k)]
        qvec = EMB.embed(query)
        sims = [(float(c.embedding @ qvec), c.chunk_id) for c in store.chunks]
        want = [cid for s, cid in sorted(sims, key=lambda p: (-p[0], p[1]))[:k]]
        # [DERIVED] exact equality against an independent cosine scan.
        assert got == want

    planted_first = 0
    for _ in range(200):
        docs = {
            f"d{i:03d}": " ".join(rng.choices(VOCAB, k=rng.randint(3, 40)))
            for i in range(rng.randint(2, 30))
        }
        phrase = " ".join(rng.sample(RARE, k=3))
        docs["planted"] = f"{phrase} " + " ".join(rng.choices(VOCAB, k=5))
        store = ingest(docs, EMB)
        hits = hybrid_retrieve(store, phrase, k=5)
        if hits and store.chunk_by_id(hits[0].chunk_id).doc_id == "planted":
            planted_first += 1
    assert planted_first >= 190  # 95% of 200
    announce(
        capsys,
        "retrieval-oracle",
        f"semantic_search equals the brute-force cosine scan on 200 corpora; "
        f"hybrid ranks the planted chunk first in {planted_first}/200 trials",
    )


# ---------------------------------------------------------------------------
# 5. rule manager protocol


class CountingScriptedRetriever:
    def __init__(self, answer_on_attempt: int) -> None:
        self.answer_on_attempt = answer_on_attempt
        self.calls = 0
        self.asked: dict[str, int] = {}

    def complete_raw(self, messages, tools) -> str:
        self.calls += 1
        question = messages[-1].content.splitlines()[0]
        self.asked[question] = self.asked.get(question, 0) + 1
        attempt = 1
        if question.startswith("Question: List all"):
            attempt = 2
        elif question.startswith("Question: According to"):
            attempt = 3
        if attempt >= self.answer_on_attempt:
            return "- the relevant entry\nDONE"
        return f"{NO_ANSWER}\nDONE"


@pytest.fixture(scope="module")
def workplace_bundle():
    scenario = load_bundled("workplace")
    store = ingest(scenario.documents_map(), EMB)
    return scenario, store


def test_rule_manager_retry_protocol(capsys, workplace_bundle):
    scenario, store = workplace_bundle
    names = [u.first_name for u in scenario.users]

    # fail twice per field: everything fills on the third phrasing
    stubborn = CountingScriptedRetriever(answer_on_attempt=3)
    sheet = manager_collect(names, store, stubborn)
    # [DERIVED] 3 users x 3 fields x 3 attempts.
    assert stubborn.calls == len(names) * 3 * RETRY_BUDGET == 27
    for section in sheet.sections:
        for fld in ("schedule", "preferences", "policies"):
            cell = section.field(fld)
            assert cell.status is FieldStatus.FILLED
            assert cell.attempts == RETRY_BUDGET

    # never answer: every field lands Unresolved(3) and the sheet still ships
    silent = CountingScriptedRetriever(answer_on_attempt=99)
    sheet = manager_collect(names, store, silent)
    assert silent.calls == 27
    for section in sheet.sections:
        for fld in ("schedule", "preferences", "policies"):
            cell = section.field(fld)
            assert cell.status is FieldStatus.UNRESOLVED
            assert cell.attempts == RETRY_BUDGET
    jsonschema.validate(sheet.to_dict(), SHEET_SCHEMA)
    announce(
        capsys,
        "rule-manager-protocol",
        "fail-twice retriever fills all 9 fields in exactly 27 calls; "
        "an always-failing retriever yields Unresolved(3) everywhere and "
        "the sheet is still emitted",
    )


# ---------------------------------------------------------------------------
# 6. orchestrator bounds


def test_adversarial_agents_terminate_quickly(capsys):
    started = time.monotonic()

    rambler = AgentSpec(
        name="rambler",
        system_prompt="keep talking",
        backend=ScriptedBackend(lambda m, t: "still thinking about it"),
        max_turns=5,
    )
    with pytest.raises(MaxTurnsExceeded):
        Orchestrator().run_task(rambler, Message(role=Role.USER, content="go"))

    from concord.gateway import ToolSchema

    echo = ToolSchema(
        tool_name="echo",
        schema={"type": "object", "required": ["text"], "properties": {"text": {"type": "string"}}},
        instruction="echo text",
    )
    saboteur = AgentSpec(
        name="saboteur",
        system_prompt="break the protocol",
        backend=ScriptedBackend(lambda m, t: '{"tool": "echo", "payload": {"wrong": 1}}'),
        tools=(echo,),
        handlers={"echo": lambda payload, task: "ok"},
        max_turns=10,
    )
    with pytest.raises(ProtocolDeviation):
        Orchestrator().run_task(saboteur, Message(role=Role.USER, content="go"))

    elapsed = time.monotonic() - started
    assert elapsed < 1.0
    announce(
        capsys,
        "orchestrator-bounds",
        f"never-DONE and malformed-tool agents terminate in "
        f"MaxTurnsExceeded/ProtocolDeviation within {elapsed:.3f}s",
    )


# ---------------------------------------------------------------------------
# 7. degradation direction


def test_truncated_monolith_scores_strictly_below_the_pipeline(capsys):
    report = run_full(trials=1, backend=BackendConfig(kind="truncation"))
    gaps = []
    for name in BUNDLED_NAMES:
        mono = report.result_for(name, Condition.MONOLITHIC)
        multi = report.result_for(name, Condition.MULTI_AGENT)
        # [DERIVED] direction only; magnitudes are scenario-specific.
        assert mono.retrieval_pct < multi.retrieval_pct
        assert mono.conflict_pct < multi.conflict_pct
        gaps.append(
            f"{name} {mono.retrieval_pct:.0f}/{mono.conflict_pct:.0f} vs 100/100"
        )
    announce(
        capsys,
        "degradation-direction",
        "truncated monolith strictly below the pipeline on both metrics for "
        "every scenario (" + "; ".join(gaps) + ")",
    )


# ---------------------------------------------------------------------------
# 8. evaluation accounting


def test_full_run_accounting_and_report_shape(capsys):
    report = run_full(trials=3)
    # [PAPER] 15 instances per scenario-condition, 45 per condition, 90 total.
    assert report.instances == 90
    assert len(report.results) == 6
    for result in report.results:
        assert result.instances == 15
        assert len(result.trials) == 3
    lines = report_csv(report).splitlines()
    assert len(lines) == 1 + 12  # 3 scenarios x 2 conditions x 2 metrics
    announce(
        capsys,
        "evaluation-accounting",
        "full run totals 90 instances; report shape is 3 scenarios x "
        "2 conditions x 2 metrics",
    )
