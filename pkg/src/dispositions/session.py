"""Questionnaire sessions: one agent answering a corpus one scenario at a time.

Sessions are values.  ``submit_feedback`` judges the feedback, elicits
dispositions on a sound verdict, and returns a new session with the record
appended; persisting the result and updating the agent's profile is the
caller's job (see :mod:`dispositions.engine`).

An exported session embeds the scenarios and the soundness configuration it
was judged under, so a replay needs nothing but the export document.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any, Optional, Union

from . import serde
from .corpus import Corpus, scenario_record
from .elicitation import Disposition, elicit
from .model import (
    Feedback,
    Scenario,
    SchemaViolation,
    ValidationError,
    check_agent_id,
    validate_scenario,
)
from .profile import AgentMismatch, Profile, empty_profile, observe
from .soundness import DEFAULT_CONFIG, SoundnessConfig, SoundnessVerdict, sound


class WrongScenario(ValueError):
    """Feedback submitted for a scenario other than the current one."""


class SessionComplete(ValueError):
    """Every scenario in the session has already been answered."""


@dataclass(frozen=True)
class CollectedRecord:
    """One answered scenario: the feedback, its verdict, and what it elicited."""

    feedback: Feedback
    verdict: SoundnessVerdict
    dispositions: tuple[Disposition, ...]

    def __post_init__(self) -> None:
        if self.verdict.scenario != self.feedback.scenario:
            raise ValueError("verdict does not reference the feedback's scenario")


@dataclass(frozen=True)
class Session:
    id: str
    agent: str
    corpus: str
    order: tuple[str, ...]
    collected: tuple[CollectedRecord, ...] = ()

    def __post_init__(self) -> None:
        check_agent_id(self.agent)
        if not self.id:
            raise ValueError("session id must not be empty")
        if len(set(self.order)) != len(self.order):
            raise ValueError("session order repeats a scenario")
        if len(self.collected) > len(self.order):
            raise ValueError("more answers than scenarios")
        for index, record in enumerate(self.collected):
            if record.feedback.scenario != self.order[index]:
                raise ValueError(
                    f"answer {index} is for {record.feedback.scenario!r}, "
                    f"expected {self.order[index]!r}"
                )
            if record.feedback.agent != self.agent:
                raise AgentMismatch(
                    f"answer {index} was given by {record.feedback.agent!r}"
                )

    @property
    def cursor(self) -> int:
        return len(self.collected)

    @property
    def done(self) -> bool:
        return self.cursor == len(self.order)


def new_session(
    session_id: str,
    agent: str,
    corpus: Corpus,
    randomize: bool = False,
) -> Session:
    """Open a session over the corpus, in corpus order unless randomized.

    A randomized order is seeded by the session id, so reloading the session
    never changes which scenario comes next.
    """
    order = [scenario.id for scenario in corpus.scenarios]
    if randomize:
        random.Random(session_id).shuffle(order)
    return Session(id=session_id, agent=agent, corpus=corpus.id, order=tuple(order))


def next_scenario(session: Session, corpus: Corpus) -> Optional[Scenario]:
    """The scenario awaiting an answer, or None when the session is done."""
    if corpus.id != session.corpus:
        raise ValueError(
            f"session runs over corpus {session.corpus!r}, got {corpus.id!r}"
        )
    if session.done:
        return None
    return corpus.scenario(session.order[session.cursor])


def submit_feedback(
    session: Session,
    corpus: Corpus,
    feedback: Feedback,
    config: SoundnessConfig = DEFAULT_CONFIG,
) -> tuple[SoundnessVerdict, tuple[Disposition, ...], Session]:
    """Judge the feedback for the current scenario and advance the session.

    The verdict and any elicited dispositions are returned for immediate
    display; they are also appended to the session's collected records.
    """
    scenario = next_scenario(session, corpus)
    if scenario is None:
        raise SessionComplete(f"session {session.id!r} has no unanswered scenarios")
    if feedback.scenario != scenario.id:
        raise WrongScenario(
            f"current scenario is {scenario.id!r}, got feedback for "
            f"{feedback.scenario!r}"
        )
    if feedback.agent != session.agent:
        raise AgentMismatch(
            f"session belongs to {session.agent!r}, got feedback from "
            f"{feedback.agent!r}"
        )
    verdict = sound(scenario, feedback.response, feedback.justification, config)
    dispositions = tuple(elicit(session.agent, scenario, feedback, verdict))
    record = CollectedRecord(
        feedback=feedback, verdict=verdict, dispositions=dispositions
    )
    advanced = Session(
        id=session.id,
        agent=session.agent,
        corpus=session.corpus,
        order=session.order,
        collected=session.collected + (record,),
    )
    return verdict, dispositions, advanced


def record_json(record: CollectedRecord) -> dict[str, Any]:
    return {
        "feedback": serde.feedback_json(record.feedback),
        "verdict": serde.verdict_json(record.verdict),
        "dispositions": [serde.disposition_json(d) for d in record.dispositions],
    }


def record_from(value: Any, path: str) -> CollectedRecord:
    doc = serde.expect_mapping(value, path)
    dispositions_path = serde.child(path, "dispositions")
    dispositions = tuple(
        serde.disposition_from(raw, serde.item(dispositions_path, index))
        for index, raw in enumerate(
            serde.expect_list(
                serde.field(doc, "dispositions", path), dispositions_path
            )
        )
    )
    try:
        return CollectedRecord(
            feedback=serde.feedback_from(
                serde.field(doc, "feedback", path), serde.child(path, "feedback")
            ),
            verdict=serde.verdict_from(
                serde.field(doc, "verdict", path), serde.child(path, "verdict")
            ),
            dispositions=dispositions,
        )
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from None


def session_document(session: Session) -> dict[str, Any]:
    """The persistence document: everything needed to resume the session."""
    return {
        "id": session.id,
        "agent": session.agent,
        "corpus": session.corpus,
        "order": list(session.order),
        "records": [record_json(record) for record in session.collected],
    }


def session_from_document(doc: Any, path: str = "") -> Session:
    top = serde.expect_mapping(doc, path)
    order_path = serde.child(path, "order")
    order = tuple(
        serde.expect_str(raw, serde.item(order_path, index))
        for index, raw in enumerate(
            serde.expect_list(serde.field(top, "order", path), order_path)
        )
    )
    records_path = serde.child(path, "records")
    collected = tuple(
        record_from(raw, serde.item(records_path, index))
        for index, raw in enumerate(
            serde.expect_list(serde.field(top, "records", path), records_path)
        )
    )
    try:
        return Session(
            id=serde.expect_str(serde.field(top, "id", path), serde.child(path, "id")),
            agent=serde.expect_str(
                serde.field(top, "agent", path), serde.child(path, "agent")
            ),
            corpus=serde.expect_str(
                serde.field(top, "corpus", path), serde.child(path, "corpus")
            ),
            order=order,
            collected=collected,
        )
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from None


def export_session(
    session: Session,
    corpus: Corpus,
    config: SoundnessConfig = DEFAULT_CONFIG,
) -> bytes:
    """A self-contained export: scenarios, judging configuration, and records."""
    if corpus.id != session.corpus:
        raise ValueError(
            f"session runs over corpus {session.corpus!r}, got {corpus.id!r}"
        )
    doc = {
        "session": session.id,
        "agent": session.agent,
        "corpus": session.corpus,
        "soundness": config.to_json(),
        "scenarios": [
            scenario_record(corpus.scenario(scenario_id))
            for scenario_id in session.order
        ],
        "records": [record_json(record) for record in session.collected],
    }
    return json.dumps(doc, indent=2).encode("utf-8")


@dataclass(frozen=True)
class Replay:
    """The outcome of re-judging an exported session from scratch."""

    agent: str
    config: SoundnessConfig
    records: tuple[CollectedRecord, ...]
    profile: Profile


def replay_export(data: Union[bytes, str]) -> Replay:
    """Re-run soundness and elicitation over an exported session.

    Every verdict and disposition is recomputed from the embedded scenarios
    and configuration, never copied, so a replay independently confirms the
    export.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("", f"not a valid JSON document: {exc}") from None
    top = serde.expect_mapping(doc, "")
    agent = serde.expect_str(serde.field(top, "agent", ""), "agent")
    try:
        config = SoundnessConfig.from_json(serde.field(top, "soundness", ""))
    except (ValueError, TypeError) as exc:
        raise SchemaViolation("soundness", str(exc)) from None
    scenarios: dict[str, Scenario] = {}
    for index, raw in enumerate(serde.expect_list(serde.field(top, "scenarios", ""), "scenarios")):
        item_path = serde.item("scenarios", index)
        try:
            scenario = validate_scenario(raw)
        except ValidationError as exc:
            raise SchemaViolation(item_path, str(exc)) from None
        scenarios[scenario.id] = scenario
    records = []
    profile = empty_profile(agent)
    for index, raw in enumerate(serde.expect_list(serde.field(top, "records", ""), "records")):
        item_path = serde.item("records", index)
        feedback = serde.feedback_from(
            serde.field(serde.expect_mapping(raw, item_path), "feedback", item_path),
            serde.child(item_path, "feedback"),
        )
        if feedback.scenario not in scenarios:
            raise SchemaViolation(
                serde.child(item_path, "feedback.scenario"),
                f"export does not embed scenario {feedback.scenario!r}",
            )
        scenario = scenarios[feedback.scenario]
        verdict = sound(scenario, feedback.response, feedback.justification, config)
        dispositions = tuple(elicit(agent, scenario, feedback, verdict))
        record = CollectedRecord(
            feedback=feedback, verdict=verdict, dispositions=dispositions
        )
        records.append(record)
        profile = observe(profile, feedback, verdict, dispositions)
    return Replay(
        agent=agent, config=config, records=tuple(records), profile=profile
    )
