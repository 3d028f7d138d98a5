"""JSON codecs shared by profile persistence, session storage, and exports.

Readers raise :class:`~dispositions.model.SchemaViolation` with a path to the
offending element, e.g. ``repertoire[0].observations[2].grade``.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Mapping, Type, TypeVar

from .elicitation import Disposition, FeedbackRef, Manifestation, Pole
from .model import (
    PARAMETERS,
    Category,
    Dimension,
    Feedback,
    Parameter,
    Response,
    SchemaViolation,
)
from .soundness import ParameterVerdict, SoundnessVerdict, ValueBand, Verdict

E = TypeVar("E", bound=Enum)


def child(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def item(path: str, index: int) -> str:
    return f"{path}[{index}]"


def expect_mapping(value: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(value, Mapping):
        raise SchemaViolation(path, "expected an object")
    return value


def expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaViolation(path, "expected an array")
    return value


def expect_str(value: Any, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise SchemaViolation(path, "expected a non-empty string")
    return value


def expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolation(path, "expected an integer")
    return value


def expect_scale(value: Any, path: str) -> int:
    number = expect_int(value, path)
    if not 1 <= number <= 5:
        raise SchemaViolation(path, f"expected an integer in 1..5, got {number}")
    return number


def expect_enum(enum_cls: Type[E], value: Any, path: str) -> E:
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(repr(member.value) for member in enum_cls)
        raise SchemaViolation(path, f"expected one of {allowed}, got {value!r}") from None


def field(doc: Mapping[str, Any], key: str, path: str) -> Any:
    if key not in doc:
        raise SchemaViolation(child(path, key), "missing required field")
    return doc[key]


def category_json(category: Category) -> list[str]:
    return [parameter.value for parameter in category.parameters()]


def category_from(value: Any, path: str) -> Category:
    members = []
    for index, name in enumerate(expect_list(value, path)):
        members.append(expect_enum(Parameter, name, item(path, index)))
    if len(set(members)) != len(members):
        raise SchemaViolation(path, "duplicate parameter in category")
    return Category.of(members)


def justification_json(justification: Mapping[Parameter, int]) -> dict[str, int]:
    return {parameter.value: justification[parameter] for parameter in PARAMETERS}


def justification_from(value: Any, path: str) -> dict[Parameter, int]:
    doc = expect_mapping(value, path)
    justification = {}
    for parameter in PARAMETERS:
        justification[parameter] = expect_scale(
            field(doc, parameter.value, path), child(path, parameter.value)
        )
    return justification


def feedback_json(feedback: Feedback) -> dict[str, Any]:
    return {
        "agent": feedback.agent,
        "scenario": feedback.scenario,
        "response": feedback.response.value,
        "justification": justification_json(feedback.justification),
    }


def feedback_from(value: Any, path: str) -> Feedback:
    doc = expect_mapping(value, path)
    return Feedback(
        agent=expect_str(field(doc, "agent", path), child(path, "agent")),
        scenario=expect_str(field(doc, "scenario", path), child(path, "scenario")),
        response=expect_enum(
            Response, field(doc, "response", path), child(path, "response")
        ),
        justification=justification_from(
            field(doc, "justification", path), child(path, "justification")
        ),
    )


def verdict_json(verdict: SoundnessVerdict) -> dict[str, Any]:
    return {
        "scenario": verdict.scenario,
        "overall": verdict.overall.value,
        "per_parameter": {
            parameter.value: {
                "observed": judged.observed.value,
                "expected": judged.expected.value,
                "verdict": judged.verdict.value,
            }
            for parameter, judged in sorted(verdict.per_parameter.items())
        },
    }


def verdict_from(value: Any, path: str) -> SoundnessVerdict:
    doc = expect_mapping(value, path)
    per_path = child(path, "per_parameter")
    per_parameter = {}
    for key, raw in expect_mapping(field(doc, "per_parameter", path), per_path).items():
        parameter = expect_enum(Parameter, key, per_path)
        entry_path = child(per_path, parameter.value)
        entry = expect_mapping(raw, entry_path)
        per_parameter[parameter] = ParameterVerdict(
            observed=expect_enum(
                ValueBand, field(entry, "observed", entry_path), child(entry_path, "observed")
            ),
            expected=expect_enum(
                ValueBand, field(entry, "expected", entry_path), child(entry_path, "expected")
            ),
            verdict=expect_enum(
                Verdict, field(entry, "verdict", entry_path), child(entry_path, "verdict")
            ),
        )
    return SoundnessVerdict(
        scenario=expect_str(field(doc, "scenario", path), child(path, "scenario")),
        overall=expect_enum(Verdict, field(doc, "overall", path), child(path, "overall")),
        per_parameter=per_parameter,
    )


def disposition_json(disposition: Disposition) -> dict[str, Any]:
    return {
        "agent": disposition.agent,
        "dimension": disposition.dimension.value,
        "category": category_json(disposition.stimulus),
        "pole": disposition.pole.value,
        "grade": disposition.grade,
        "manifestation": disposition.manifestation.value,
        "provenance": {
            "scenario": disposition.provenance.scenario,
            "response": disposition.provenance.response.value,
        },
    }


def disposition_from(value: Any, path: str) -> Disposition:
    doc = expect_mapping(value, path)
    provenance_path = child(path, "provenance")
    provenance = expect_mapping(field(doc, "provenance", path), provenance_path)
    return Disposition(
        agent=expect_str(field(doc, "agent", path), child(path, "agent")),
        dimension=expect_enum(
            Dimension, field(doc, "dimension", path), child(path, "dimension")
        ),
        stimulus=category_from(field(doc, "category", path), child(path, "category")),
        pole=expect_enum(Pole, field(doc, "pole", path), child(path, "pole")),
        grade=expect_scale(field(doc, "grade", path), child(path, "grade")),
        manifestation=expect_enum(
            Manifestation,
            field(doc, "manifestation", path),
            child(path, "manifestation"),
        ),
        provenance=FeedbackRef(
            scenario=expect_str(
                field(provenance, "scenario", provenance_path),
                child(provenance_path, "scenario"),
            ),
            response=expect_enum(
                Response,
                field(provenance, "response", provenance_path),
                child(provenance_path, "response"),
            ),
        ),
    )
