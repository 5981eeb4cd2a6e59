"""Scenario files: strict loading, document rendering, bundled assets.

A scenario lives in one JSON document holding users, rules, policy,
per-user prose documents, and (when bundled) a reference solution.
Loading is deliberately strict. Syntax problems raise ScenarioParseError
with the position; everything else is collected and raised as a single
ScenarioValidationError so an author sees every broken invariant at once
instead of fixing them one save at a time.
"""

from __future__ import annotations

import json
from pathlib import Path
from importlib import resources
from typing import Union

import jsonschema

from ..model import Scenario, validate_scenario

#: Names of the scenarios shipped inside the package, in presentation order.
BUNDLED_NAMES: tuple[str, ...] = ("workplace", "assistive_care", "smarthome")


class ScenarioParseError(ValueError):
    """The file is not valid JSON; the message carries source:line:column."""


class ScenarioValidationError(ValueError):
    """The document parsed but breaks scenario invariants.

    `errors` lists every violation found (schema mismatches or semantic
    checks), each as one human-readable string.
    """

    def __init__(self, source: str, errors: list[str]):
        listing = "\n".join(f"  - {e}" for e in errors)
        super().__init__(f"{source}: {len(errors)} validation error(s)\n{listing}")
        self.source = source
        self.errors = list(errors)


_schema_cache: dict | None = None


def _schema() -> dict:
    global _schema_cache
    if _schema_cache is None:
        text = (resources.files(__package__) / "schema.json").read_text("utf-8")
        _schema_cache = json.loads(text)
    return _schema_cache


def loads_scenario(text: str, *, source: str = "<memory>") -> Scenario:
    """Parse and validate a scenario from a JSON string."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc

    validator = jsonschema.Draft202012Validator(_schema())
    found = sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.absolute_path])
    if found:
        problems = []
        for err in found:
            where = "/".join(str(p) for p in err.absolute_path) or "(document root)"
            problems.append(f"{where}: {err.message}")
        raise ScenarioValidationError(source, problems)

    try:
        scenario = Scenario.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioValidationError(source, [f"unreadable scenario: {exc!r}"]) from exc

    errors = validate_scenario(scenario)
    if errors:
        raise ScenarioValidationError(source, errors)
    return scenario


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Load one scenario from a JSON file on disk."""
    p = Path(path)
    return loads_scenario(p.read_text("utf-8"), source=str(p))


def render_documents(scenario: Scenario) -> dict[str, str]:
    """Render the per-user prose documents the retriever searches.

    Each user gets a header line followed by one line per owned rule: the
    rule text with its id appended in square brackets, in scenario rule
    order. A user with no rules still gets the header, so every user has a
    document. The rendering is pure string assembly over scenario content,
    so equal scenarios produce byte-equal documents.
    """
    docs: dict[str, str] = {}
    for user in scenario.users:
        lines = [f"{user.first_name}'s notes ({scenario.name})", ""]
        for rule in scenario.rules:
            if rule.owner == user.user_id:
                lines.append(f"{rule.text} [{rule.rule_id}]")
        docs[user.user_id] = "\n".join(lines) + "\n"
    return docs


def bundled_path(name: str) -> Path:
    """Filesystem path of a bundled scenario asset."""
    if name not in BUNDLED_NAMES:
        known = ", ".join(BUNDLED_NAMES)
        raise KeyError(f"unknown bundled scenario {name!r} (known: {known})")
    return Path(str(resources.files(__package__) / "data" / f"{name}.scenario.json"))


def load_bundled(name: str) -> Scenario:
    """Load one of the scenarios shipped with the package."""
    return load_scenario(bundled_path(name))


__all__ = [
    "BUNDLED_NAMES",
    "ScenarioParseError",
    "ScenarioValidationError",
    "loads_scenario",
    "load_scenario",
    "render_documents",
    "bundled_path",
    "load_bundled",
]
