#!/usr/bin/env python3
"""Regenerate the bundled scenario JSON assets from their authoring tables.

The assets under src/concord/scenarios/data/ are never edited by hand.
This script rebuilds each one, re-checks the properties the rest of the
suite leans on, and rewrites the files only when everything holds:

  * the scenario passes structural validation with no findings,
  * the conflict engine finds exactly the 12 recorded conflicts,
  * the reference week earns full credit: all 60 rules satisfied, all
    12 conflicts resolved, zero violations,
  * every rule checker fails against an empty week, so no rule is
    satisfied vacuously.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from concord.checkers import satisfies
from concord.conflicts import detect_conflicts, validate_plan
from concord.model import WORKWEEK, Plan, Scenario, validate_scenario
from concord.scenarios import bundled_path
from concord.scenarios.authoring import BUILDERS


def check(scenario: Scenario) -> None:
    problems = validate_scenario(scenario)
    if problems:
        raise SystemExit(f"{scenario.name}: validation findings: {problems}")

    assert scenario.reference is not None
    detected = detect_conflicts(scenario)
    if detected != scenario.reference.conflicts:
        raise SystemExit(f"{scenario.name}: detected conflicts diverge from the recorded reference")
    if len(detected) != 12:
        raise SystemExit(f"{scenario.name}: expected 12 conflicts, found {len(detected)}")

    report = validate_plan(scenario.reference.plans, scenario)
    if report.violations:
        lines = "\n".join(f"  - {v}" for v in report.violations)
        raise SystemExit(f"{scenario.name}: reference week has violations:\n{lines}")
    if len(report.satisfied_rule_ids) != len(scenario.rules):
        missing = sorted(set(r.rule_id for r in scenario.rules) - set(report.satisfied_rule_ids))
        raise SystemExit(f"{scenario.name}: unsatisfied rules: {missing}")
    if len(report.resolved_conflict_ids) != 12:
        handled = set(report.resolved_conflict_ids)
        missing = sorted(c.conflict_id for c in detected if c.conflict_id not in handled)
        raise SystemExit(f"{scenario.name}: unresolved conflicts: {missing}")

    empty_week = tuple(Plan(day=day, actions=()) for day in WORKWEEK)
    vacuous = [r.rule_id for r in scenario.rules if r.checker is not None and satisfies(r.checker, empty_week)]
    if vacuous:
        raise SystemExit(f"{scenario.name}: checkers pass on an empty week: {vacuous}")

    roundtrip = Scenario.from_dict(scenario.to_dict())
    if roundtrip != scenario:
        raise SystemExit(f"{scenario.name}: to_dict/from_dict round-trip is lossy")


def main() -> int:
    for name, builder in BUILDERS.items():
        scenario = builder()
        check(scenario)
        target = bundled_path(name)
        target.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps(scenario.to_dict(), indent=2, sort_keys=True) + "\n"
        target.write_text(payload, encoding="utf-8")
        size = len(payload.encode("utf-8"))
        print(f"{name}: {len(scenario.rules)} rules, {len(scenario.reference.conflicts)} conflicts -> {target} ({size} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
