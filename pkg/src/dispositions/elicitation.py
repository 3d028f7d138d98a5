"""Turning sound feedback into graded dispositional rules.

A disposition is a stimulus/manifestation pair: in scenarios of a given
category (the stimulus) the agent would take, or refrain from, the action
class (the manifestation).  The pole says which end of the dimension the
agent manifests and the grade carries the 1..5 rating verbatim, so the rule
stays a graded property rather than a hard constraint.  Nothing is elicited
from unsound or indeterminate feedback.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .model import (
    PARAMETERS,
    Category,
    Dimension,
    Feedback,
    Response,
    Scenario,
    category_of,
    check_agent_id,
    scale_value,
)
from .soundness import SoundnessVerdict, ValueBand, Verdict, expected_band


class Pole(str, Enum):
    """Which end of a dimension the agent manifests: POSITIVE is the high end
    (law abiding on legality, altruistic on goodwill)."""

    POSITIVE = "positive"
    NEGATIVE = "negative"


class Manifestation(str, Enum):
    WOULD_ACT = "would_act"
    WOULD_REFRAIN = "would_refrain"


@dataclass(frozen=True)
class FeedbackRef:
    """Provenance pointer: which answer a disposition was elicited from."""

    scenario: str
    response: Response


@dataclass(frozen=True)
class Disposition:
    """A graded dispositional rule for one agent.

    The stimulus is a whole category, so the rule generalizes to every
    scenario with the same press set.
    """

    agent: str
    dimension: Dimension
    stimulus: Category
    pole: Pole
    grade: int
    manifestation: Manifestation
    provenance: FeedbackRef

    def __post_init__(self) -> None:
        check_agent_id(self.agent)
        scale_value(self.grade)


DEFAULT_POLE_LABELS: Mapping[tuple[Dimension, Pole], str] = {
    (Dimension.LEGALITY, Pole.POSITIVE): "law abiding",
    (Dimension.LEGALITY, Pole.NEGATIVE): "law defying",
    (Dimension.GOODWILL, Pole.POSITIVE): "altruistic",
    (Dimension.GOODWILL, Pole.NEGATIVE): "non-altruistic",
    (Dimension.SELF_SERVINGNESS, Pole.POSITIVE): "egoistic",
    (Dimension.SELF_SERVINGNESS, Pole.NEGATIVE): "non-egoistic",
    (Dimension.PRAGMATISM, Pole.POSITIVE): "experience-driven",
    (Dimension.PRAGMATISM, Pole.NEGATIVE): "experience-indifferent",
}


@dataclass(frozen=True)
class PoleLabelTable:
    """Human-readable labels for every (dimension, pole) pair.

    Must be total over all 8 pairs; build partial overrides on top of the
    defaults with :meth:`with_overrides`.
    """

    labels: Mapping[tuple[Dimension, Pole], str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", dict(self.labels))
        required = {(d, p) for d in Dimension for p in Pole}
        missing = required - set(self.labels)
        if missing:
            names = ", ".join(
                f"({d.value}, {p.value})" for d, p in sorted(missing, key=str)
            )
            raise ValueError(f"pole label table must cover every pair; missing {names}")

    def label(self, dimension: Dimension, pole: Pole) -> str:
        return self.labels[(dimension, pole)]

    @classmethod
    def default(cls) -> "PoleLabelTable":
        return cls(DEFAULT_POLE_LABELS)

    @classmethod
    def with_overrides(cls, overrides: Mapping[str, Mapping[str, str]]) -> "PoleLabelTable":
        """Overlay ``{dimension: {pole: label}}`` entries onto the defaults."""
        labels = dict(DEFAULT_POLE_LABELS)
        for dimension_name, poles in overrides.items():
            dimension = Dimension(dimension_name)
            for pole_name, label in poles.items():
                labels[(dimension, Pole(pole_name))] = str(label)
        return cls(labels)


class VerdictMismatch(ValueError):
    """The supplied verdict was not computed for the given scenario/feedback."""


def elicit(
    agent: str,
    scenario: Scenario,
    feedback: Feedback,
    verdict: SoundnessVerdict,
) -> list[Disposition]:
    """Elicit dispositions from one judged feedback.

    Returns an empty list unless the overall verdict is sound; otherwise one
    disposition per consistently rated pressed parameter (all of them under
    the default all-must-agree combinator).  Grades are carried verbatim from
    the justification, never synthesized.
    """
    check_agent_id(agent)
    if feedback.agent != agent:
        raise VerdictMismatch(
            f"feedback was given by {feedback.agent!r}, not {agent!r}"
        )
    if feedback.scenario != scenario.id or verdict.scenario != scenario.id:
        raise VerdictMismatch(
            f"verdict/feedback do not reference scenario {scenario.id!r}"
        )
    if set(verdict.per_parameter) != set(scenario.press):
        raise VerdictMismatch("verdict does not cover the scenario's press set")
    for parameter, judged in verdict.per_parameter.items():
        if judged.expected is not expected_band(
            feedback.response, scenario.polarity[parameter]
        ):
            raise VerdictMismatch(
                f"verdict for {parameter.value} was computed for a different "
                "response or polarity"
            )

    if verdict.overall is not Verdict.SOUND:
        return []

    stimulus = category_of(scenario)
    provenance = FeedbackRef(scenario=scenario.id, response=feedback.response)
    manifestation = (
        Manifestation.WOULD_ACT
        if feedback.response is Response.YES
        else Manifestation.WOULD_REFRAIN
    )
    dispositions = []
    for parameter in PARAMETERS:
        if parameter not in scenario.press:
            continue
        if verdict.per_parameter[parameter].verdict is not Verdict.SOUND:
            continue
        pole = (
            Pole.POSITIVE
            if expected_band(feedback.response, scenario.polarity[parameter])
            is ValueBand.HIGH
            else Pole.NEGATIVE
        )
        dispositions.append(
            Disposition(
                agent=agent,
                dimension=parameter.dimension,
                stimulus=stimulus,
                pole=pole,
                grade=feedback.justification[parameter],
                manifestation=manifestation,
                provenance=provenance,
            )
        )
    return dispositions


def render_counterfactual(
    disposition: Disposition,
    labels: PoleLabelTable | None = None,
) -> str:
    """Render a disposition as its counterfactual sentence.

    Output is deterministic: identical dispositions render to identical text.
    """
    table = labels if labels is not None else PoleLabelTable.default()
    verb = (
        "take"
        if disposition.manifestation is Manifestation.WOULD_ACT
        else "refrain from"
    )
    label = table.label(disposition.dimension, disposition.pole)
    return (
        f"if {disposition.agent} were in a scenario of category "
        f"{disposition.stimulus}, {disposition.agent} would {verb} the action "
        f"({label}, grade {disposition.grade}/5)"
    )
