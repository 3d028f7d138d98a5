"""Scenario corpora: loading, validation, and serialization.

A corpus file is JSON, either a bare array of scenario records or an object
``{"id": ..., "scenarios": [...]}``.  Loading validates every scenario and
reports all problems at once, with paths like ``scenarios[3].polarity.P2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterator, Mapping, Union

from .model import (
    Scenario,
    ValidationError,
    Violation,
    validate_scenario,
)


@dataclass(frozen=True)
class Corpus:
    id: str
    scenarios: tuple[Scenario, ...] = ()

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("corpus id must not be empty")
        seen = set()
        for scenario in self.scenarios:
            if scenario.id in seen:
                raise ValueError(f"duplicate scenario id {scenario.id!r}")
            seen.add(scenario.id)

    def __len__(self) -> int:
        return len(self.scenarios)

    def __iter__(self) -> Iterator[Scenario]:
        return iter(self.scenarios)

    def scenario(self, scenario_id: str) -> Scenario:
        for scenario in self.scenarios:
            if scenario.id == scenario_id:
                return scenario
        raise KeyError(scenario_id)

    def __contains__(self, scenario_id: str) -> bool:
        return any(scenario.id == scenario_id for scenario in self.scenarios)


def scenario_record(scenario: Scenario) -> dict[str, Any]:
    """The JSON record for one scenario, press sorted for stable output."""
    pressed = sorted(scenario.press, key=lambda parameter: parameter.value)
    return {
        "id": scenario.id,
        "setting": scenario.setting,
        "problem": scenario.problem,
        "action": scenario.action,
        "press": [parameter.value for parameter in pressed],
        "polarity": {
            parameter.value: scenario.polarity[parameter].value for parameter in pressed
        },
    }


def _prefixed(prefix: str, violation: Violation) -> Violation:
    path = f"{prefix}.{violation.path}" if violation.path else prefix
    return Violation(violation.code, path, violation.message)


def load_corpus(
    data: Union[bytes, str], fmt: str = "json", fallback_id: str = "corpus"
) -> Corpus:
    """Parse and validate a corpus document.

    Raises :class:`ValidationError` carrying every violation found across the
    whole document, never just the first.
    """
    if fmt != "json":
        raise ValidationError(
            [Violation("unsupported_format", "", f"unsupported corpus format {fmt!r}")]
        )
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ValidationError(
                [Violation("parse_error", "", f"corpus is not UTF-8: {exc}")]
            ) from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            [Violation("parse_error", "", f"corpus is not valid JSON: {exc}")]
        ) from None

    corpus_id = fallback_id
    if isinstance(doc, list):
        records = doc
    elif isinstance(doc, Mapping):
        raw_id = doc.get("id", fallback_id)
        if not isinstance(raw_id, str) or not raw_id:
            raise ValidationError(
                [Violation("invalid_type", "id", "corpus id must be a non-empty string")]
            )
        corpus_id = raw_id
        records = doc.get("scenarios")
        if not isinstance(records, list):
            raise ValidationError(
                [Violation("invalid_type", "scenarios", "'scenarios' must be an array")]
            )
    else:
        raise ValidationError(
            [
                Violation(
                    "invalid_type",
                    "",
                    "corpus must be an array of scenarios or an object with one",
                )
            ]
        )

    violations: list[Violation] = []
    scenarios: list[Scenario] = []
    seen: dict[str, int] = {}
    for index, record in enumerate(records):
        prefix = f"scenarios[{index}]"
        try:
            scenario = validate_scenario(record)
        except ValidationError as exc:
            violations.extend(_prefixed(prefix, v) for v in exc.violations)
            continue
        if scenario.id in seen:
            violations.append(
                Violation(
                    "duplicate_scenario_id",
                    f"{prefix}.id",
                    f"scenario id {scenario.id!r} already used at index {seen[scenario.id]}",
                )
            )
            continue
        seen[scenario.id] = index
        scenarios.append(scenario)
    if violations:
        raise ValidationError(violations)
    return Corpus(id=corpus_id, scenarios=tuple(scenarios))


def serialize_corpus(corpus: Corpus) -> bytes:
    doc = {
        "id": corpus.id,
        "scenarios": [scenario_record(scenario) for scenario in corpus.scenarios],
    }
    return json.dumps(doc, indent=2).encode("utf-8")


def load_corpus_file(path: Union[str, Path]) -> Corpus:
    path = Path(path)
    return load_corpus(path.read_bytes(), fallback_id=path.stem)
