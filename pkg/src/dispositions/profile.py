"""Per-agent repertoires of graded dispositions.

A profile collects every disposition elicited from an agent's feedback,
keyed by (dimension, stimulus category), plus an audit trail of all
processed feedback including entries that elicited nothing.  Profiles are
values: every operation returns a new profile and never mutates its input.

Aggregation and prediction go beyond single-feedback elicitation.  A
summary reduces the observations at one key to a dominant pole with a
consistency score; prediction lets summaries vote on an unseen scenario of
the same category, weighted by consistency times support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Mapping, Optional

from . import serde
from .elicitation import Disposition, Pole
from .model import (
    Category,
    Dimension,
    Feedback,
    Parameter,
    Polarity,
    Response,
    Scenario,
    SchemaViolation,
    category_of,
    check_agent_id,
)
from .soundness import SoundnessVerdict, Verdict

RepertoireKey = tuple[Dimension, Category]


class AgentMismatch(ValueError):
    """A disposition or feedback belongs to a different agent."""


class DominantPole(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    TIED = "tied"


class PredictedResponse(str, Enum):
    YES = "yes"
    NO = "no"
    ABSTAIN = "abstain"


@dataclass(frozen=True)
class AuditRecord:
    """One processed feedback: what came in and what it yielded."""

    scenario: str
    response: Response
    verdict: Verdict
    elicited: int

    def __post_init__(self) -> None:
        if self.elicited < 0:
            raise ValueError("elicited count cannot be negative")


@dataclass(frozen=True, eq=True)
class Profile:
    agent: str
    repertoire: Mapping[RepertoireKey, tuple[Disposition, ...]] = field(
        default_factory=dict
    )
    audit: tuple[AuditRecord, ...] = ()

    # repertoire is a plain dict; treat profiles as values and never mutate.
    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        check_agent_id(self.agent)
        for (dimension, stimulus), observations in self.repertoire.items():
            for observed in observations:
                if observed.agent != self.agent:
                    raise AgentMismatch(
                        f"disposition of agent {observed.agent!r} in profile of {self.agent!r}"
                    )
                if observed.dimension is not dimension or observed.stimulus != stimulus:
                    raise ValueError(
                        f"disposition filed under wrong key {dimension.value}/{stimulus}"
                    )

    def observations(self, dimension: Dimension, stimulus: Category) -> tuple[Disposition, ...]:
        return self.repertoire.get((dimension, stimulus), ())

    @property
    def size(self) -> int:
        return sum(len(observations) for observations in self.repertoire.values())


def empty_profile(agent: str) -> Profile:
    return Profile(agent=agent)


def _extended(
    repertoire: Mapping[RepertoireKey, tuple[Disposition, ...]],
    dispositions: Iterable[Disposition],
) -> dict[RepertoireKey, tuple[Disposition, ...]]:
    updated = dict(repertoire)
    for disposition in dispositions:
        key = (disposition.dimension, disposition.stimulus)
        updated[key] = updated.get(key, ()) + (disposition,)
    return updated


def record(profile: Profile, disposition: Disposition) -> Profile:
    """Append one disposition, with an audit entry synthesized from its provenance."""
    if disposition.agent != profile.agent:
        raise AgentMismatch(
            f"disposition of agent {disposition.agent!r} cannot be recorded "
            f"for {profile.agent!r}"
        )
    entry = AuditRecord(
        scenario=disposition.provenance.scenario,
        response=disposition.provenance.response,
        verdict=Verdict.SOUND,
        elicited=1,
    )
    return Profile(
        agent=profile.agent,
        repertoire=_extended(profile.repertoire, [disposition]),
        audit=profile.audit + (entry,),
    )


def observe(
    profile: Profile,
    feedback: Feedback,
    verdict: SoundnessVerdict,
    dispositions: Iterable[Disposition],
) -> Profile:
    """Fold one judged feedback into the profile.

    Adds a single audit entry whatever the verdict; only the elicited
    dispositions (non-empty only on Sound feedback) reach the repertoire.
    """
    if feedback.agent != profile.agent:
        raise AgentMismatch(
            f"feedback from agent {feedback.agent!r} cannot be recorded "
            f"for {profile.agent!r}"
        )
    if verdict.scenario != feedback.scenario:
        raise ValueError(
            f"verdict for scenario {verdict.scenario!r} does not match "
            f"feedback on {feedback.scenario!r}"
        )
    dispositions = tuple(dispositions)
    for disposition in dispositions:
        if disposition.agent != profile.agent:
            raise AgentMismatch(
                f"disposition of agent {disposition.agent!r} cannot be recorded "
                f"for {profile.agent!r}"
            )
        if disposition.provenance.scenario != feedback.scenario:
            raise ValueError(
                f"disposition traces to scenario {disposition.provenance.scenario!r}, "
                f"not {feedback.scenario!r}"
            )
    entry = AuditRecord(
        scenario=feedback.scenario,
        response=feedback.response,
        verdict=verdict.overall,
        elicited=len(dispositions),
    )
    return Profile(
        agent=profile.agent,
        repertoire=_extended(profile.repertoire, dispositions),
        audit=profile.audit + (entry,),
    )


@dataclass(frozen=True)
class DispositionSummary:
    """Aggregate of the observations at one (dimension, category) key."""

    dominant_pole: DominantPole
    mean_grade: Fraction
    support: int
    consistency: Fraction

    def __post_init__(self) -> None:
        if self.support < 1:
            raise ValueError("a summary needs at least one observation")
        if not 1 <= self.mean_grade <= 5:
            raise ValueError(f"mean grade {self.mean_grade} outside 1..5")
        if not 0 <= self.consistency <= 1:
            raise ValueError(f"consistency {self.consistency} outside 0..1")


def summarize(
    profile: Profile, dimension: Dimension, stimulus: Category
) -> Optional[DispositionSummary]:
    """Reduce one repertoire key to dominant pole, mean grade, and consistency.

    Returns None when the profile has no observations at the key.
    """
    observations = profile.observations(dimension, stimulus)
    if not observations:
        return None
    positive = sum(1 for d in observations if d.pole is Pole.POSITIVE)
    negative = len(observations) - positive
    if positive > negative:
        dominant = DominantPole.POSITIVE
    elif negative > positive:
        dominant = DominantPole.NEGATIVE
    else:
        dominant = DominantPole.TIED
    return DispositionSummary(
        dominant_pole=dominant,
        mean_grade=Fraction(sum(d.grade for d in observations), len(observations)),
        support=len(observations),
        consistency=Fraction(max(positive, negative), len(observations)),
    )


@dataclass(frozen=True)
class Vote:
    """One pressed parameter's contribution to a prediction."""

    parameter: Parameter
    dimension: Dimension
    polarity: Polarity
    summary: DispositionSummary
    choice: Response
    weight: Fraction


@dataclass(frozen=True)
class Prediction:
    scenario: str
    category: Category
    response: PredictedResponse
    confidence: Fraction
    votes: tuple[Vote, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.confidence <= 1:
            raise ValueError(f"confidence {self.confidence} outside 0..1")


def predict(profile: Profile, scenario: Scenario) -> Prediction:
    """Predict the agent's response to an unseen scenario of a known category.

    Each pressed parameter with a non-tied summary at (dimension, category)
    casts a vote: a positive pole predicts yes under aligned polarity and no
    under opposed polarity, a negative pole the reverse.  Votes are weighted
    by consistency times support; abstains on no votes or an exact tie.
    """
    stimulus = category_of(scenario)
    votes = []
    for parameter in stimulus.parameters():
        summary = summarize(profile, parameter.dimension, stimulus)
        if summary is None or summary.dominant_pole is DominantPole.TIED:
            continue
        polarity = scenario.polarity[parameter]
        agrees = (summary.dominant_pole is DominantPole.POSITIVE) == (
            polarity is Polarity.ALIGNED
        )
        votes.append(
            Vote(
                parameter=parameter,
                dimension=parameter.dimension,
                polarity=polarity,
                summary=summary,
                choice=Response.YES if agrees else Response.NO,
                weight=summary.consistency * summary.support,
            )
        )
    yes_weight = sum((v.weight for v in votes if v.choice is Response.YES), Fraction(0))
    no_weight = sum((v.weight for v in votes if v.choice is Response.NO), Fraction(0))
    total = yes_weight + no_weight
    if total == 0 or yes_weight == no_weight:
        response, confidence = PredictedResponse.ABSTAIN, Fraction(0)
    elif yes_weight > no_weight:
        response, confidence = PredictedResponse.YES, yes_weight / total
    else:
        response, confidence = PredictedResponse.NO, no_weight / total
    return Prediction(
        scenario=scenario.id,
        category=stimulus,
        response=response,
        confidence=confidence,
        votes=tuple(votes),
    )


def profile_document(profile: Profile) -> dict[str, Any]:
    return {
        "agent": profile.agent,
        "repertoire": [
            {
                "dimension": dimension.value,
                "category": serde.category_json(stimulus),
                "observations": [serde.disposition_json(d) for d in observations],
            }
            for (dimension, stimulus), observations in profile.repertoire.items()
        ],
        "audit": [
            {
                "scenario": entry.scenario,
                "response": entry.response.value,
                "verdict": entry.verdict.value,
                "elicited": entry.elicited,
            }
            for entry in profile.audit
        ],
    }


def profile_from_document(doc: Any, path: str = "") -> Profile:
    top = serde.expect_mapping(doc, path)
    agent = serde.expect_str(serde.field(top, "agent", path), serde.child(path, "agent"))
    repertoire: dict[RepertoireKey, tuple[Disposition, ...]] = {}
    repertoire_path = serde.child(path, "repertoire")
    for index, raw in enumerate(
        serde.expect_list(serde.field(top, "repertoire", path), repertoire_path)
    ):
        entry_path = serde.item(repertoire_path, index)
        entry = serde.expect_mapping(raw, entry_path)
        dimension = serde.expect_enum(
            Dimension,
            serde.field(entry, "dimension", entry_path),
            serde.child(entry_path, "dimension"),
        )
        stimulus = serde.category_from(
            serde.field(entry, "category", entry_path),
            serde.child(entry_path, "category"),
        )
        key = (dimension, stimulus)
        if key in repertoire:
            raise SchemaViolation(entry_path, "duplicate repertoire key")
        observations_path = serde.child(entry_path, "observations")
        observations = []
        for obs_index, obs_raw in enumerate(
            serde.expect_list(
                serde.field(entry, "observations", entry_path), observations_path
            )
        ):
            obs_path = serde.item(observations_path, obs_index)
            disposition = serde.disposition_from(obs_raw, obs_path)
            if disposition.agent != agent:
                raise SchemaViolation(
                    serde.child(obs_path, "agent"),
                    f"agent {disposition.agent!r} does not match profile agent {agent!r}",
                )
            if disposition.dimension is not dimension or disposition.stimulus != stimulus:
                raise SchemaViolation(
                    obs_path, "observation does not match its repertoire key"
                )
            observations.append(disposition)
        repertoire[key] = tuple(observations)
    audit = []
    audit_path = serde.child(path, "audit")
    for index, raw in enumerate(
        serde.expect_list(serde.field(top, "audit", path), audit_path)
    ):
        entry_path = serde.item(audit_path, index)
        entry = serde.expect_mapping(raw, entry_path)
        elicited = serde.expect_int(
            serde.field(entry, "elicited", entry_path),
            serde.child(entry_path, "elicited"),
        )
        if elicited < 0:
            raise SchemaViolation(
                serde.child(entry_path, "elicited"), "elicited count cannot be negative"
            )
        audit.append(
            AuditRecord(
                scenario=serde.expect_str(
                    serde.field(entry, "scenario", entry_path),
                    serde.child(entry_path, "scenario"),
                ),
                response=serde.expect_enum(
                    Response,
                    serde.field(entry, "response", entry_path),
                    serde.child(entry_path, "response"),
                ),
                verdict=serde.expect_enum(
                    Verdict,
                    serde.field(entry, "verdict", entry_path),
                    serde.child(entry_path, "verdict"),
                ),
                elicited=elicited,
            )
        )
    return Profile(agent=agent, repertoire=repertoire, audit=tuple(audit))


def serialize_profile(profile: Profile) -> bytes:
    return json.dumps(profile_document(profile), indent=2).encode("utf-8")


def deserialize_profile(data: bytes) -> Profile:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaViolation("", f"not a valid JSON document: {exc}") from None
    return profile_from_document(doc)
