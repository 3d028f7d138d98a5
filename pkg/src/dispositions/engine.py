"""The engine ties corpora, stores, and judging configuration together.

Both the HTTP service and the CLI drive this one class, so their verdicts
agree by construction.  All feedback handling is funneled through
``submit``: judge, persist the session record, then fold the outcome into
the agent's stored profile under that agent's lock.
"""

from __future__ import annotations

import uuid
from pathlib import Path
from typing import Optional, Union

from .config import ServiceConfig
from .corpus import Corpus, load_corpus_file
from .elicitation import Disposition, PoleLabelTable, render_counterfactual
from .model import Feedback, Scenario, validate_feedback
from .profile import Prediction, Profile, empty_profile, observe, predict
from .session import (
    Replay,
    Session,
    SessionComplete,
    export_session,
    new_session,
    next_scenario,
    replay_export,
    submit_feedback,
)
from .soundness import DEFAULT_CONFIG, SoundnessConfig, SoundnessVerdict
from .store import ProfileStore, SessionStore


class Engine:
    def __init__(
        self,
        corpora: list[Corpus],
        storage_dir: Union[str, Path],
        soundness: SoundnessConfig = DEFAULT_CONFIG,
        labels: Optional[PoleLabelTable] = None,
        randomize_order: bool = False,
    ):
        if not corpora:
            raise ValueError("engine needs at least one corpus")
        self.corpora: dict[str, Corpus] = {}
        for corpus in corpora:
            if corpus.id in self.corpora:
                raise ValueError(f"duplicate corpus id {corpus.id!r}")
            self.corpora[corpus.id] = corpus
        storage_dir = Path(storage_dir)
        self.profiles = ProfileStore(storage_dir / "profiles")
        self.sessions = SessionStore(storage_dir / "sessions")
        self.soundness = soundness
        self.labels = labels if labels is not None else PoleLabelTable.default()
        self.randomize_order = randomize_order

    @classmethod
    def from_config(cls, config: ServiceConfig) -> "Engine":
        corpora = [load_corpus_file(path) for path in config.corpora]
        return cls(
            corpora=corpora,
            storage_dir=config.storage_dir,
            soundness=config.soundness,
            labels=config.labels,
            randomize_order=config.randomize_order,
        )

    @property
    def default_corpus(self) -> Corpus:
        return next(iter(self.corpora.values()))

    def corpus(self, corpus_id: Optional[str] = None) -> Corpus:
        if corpus_id is None:
            return self.default_corpus
        try:
            return self.corpora[corpus_id]
        except KeyError:
            raise KeyError(f"unknown corpus {corpus_id!r}") from None

    def scenarios(self, corpus_id: Optional[str] = None) -> list[tuple[Corpus, Scenario]]:
        if corpus_id is not None:
            corpus = self.corpus(corpus_id)
            return [(corpus, scenario) for scenario in corpus]
        return [
            (corpus, scenario)
            for corpus in self.corpora.values()
            for scenario in corpus
        ]

    def find_scenario(self, scenario_id: str) -> tuple[Corpus, Scenario]:
        """Scenario ids are looked up across every loaded corpus."""
        for corpus in self.corpora.values():
            if scenario_id in corpus:
                return corpus, corpus.scenario(scenario_id)
        raise KeyError(f"unknown scenario {scenario_id!r}")

    # -- sessions ---------------------------------------------------------

    def start_session(
        self, agent: str, corpus_id: Optional[str] = None
    ) -> tuple[Session, Optional[Scenario]]:
        corpus = self.corpus(corpus_id)
        session = new_session(
            session_id=uuid.uuid4().hex,
            agent=agent,
            corpus=corpus,
            randomize=self.randomize_order,
        )
        self.sessions.save(session)
        return session, next_scenario(session, corpus)

    def get_session(self, session_id: str) -> Session:
        session = self.sessions.load(session_id)
        if session is None:
            raise KeyError(f"unknown session {session_id!r}")
        return session

    def session_corpus(self, session: Session) -> Corpus:
        try:
            return self.corpora[session.corpus]
        except KeyError:
            raise KeyError(
                f"session {session.id!r} references unloaded corpus "
                f"{session.corpus!r}"
            ) from None

    def current_scenario(self, session_id: str) -> Optional[Scenario]:
        session = self.get_session(session_id)
        return next_scenario(session, self.session_corpus(session))

    def submit(
        self, session_id: str, feedback_record: dict
    ) -> tuple[SoundnessVerdict, tuple[Disposition, ...], Session, Optional[Scenario]]:
        """Validate and judge one feedback for the session's current scenario.

        ``feedback_record`` carries response and justification; agent and
        scenario default to the session's.  The session record and the
        profile update are persisted before returning.
        """
        session = self.get_session(session_id)
        corpus = self.session_corpus(session)
        outcome: dict = {}

        def apply(current: Session) -> Session:
            pending = next_scenario(current, corpus)
            if pending is None:
                raise SessionComplete(
                    f"session {current.id!r} has no unanswered scenarios"
                )
            record = dict(feedback_record)
            record.setdefault("agent", current.agent)
            record.setdefault("scenario", pending.id)
            feedback = validate_feedback(record)
            verdict, dispositions, advanced = submit_feedback(
                current, corpus, feedback, self.soundness
            )
            outcome["feedback"] = feedback
            outcome["verdict"] = verdict
            outcome["dispositions"] = dispositions
            return advanced

        advanced = self.sessions.update(session_id, apply)
        self.profiles.update(
            advanced.agent,
            lambda profile: observe(
                profile,
                outcome["feedback"],
                outcome["verdict"],
                outcome["dispositions"],
            ),
        )
        return (
            outcome["verdict"],
            outcome["dispositions"],
            advanced,
            next_scenario(advanced, corpus),
        )

    def export(self, session_id: str) -> bytes:
        session = self.get_session(session_id)
        return export_session(session, self.session_corpus(session), self.soundness)

    def replay(self, data: bytes) -> Replay:
        return replay_export(data)

    # -- profiles ---------------------------------------------------------

    def profile(self, agent: str) -> Optional[Profile]:
        return self.profiles.load(agent)

    def profile_or_empty(self, agent: str) -> Profile:
        profile = self.profiles.load(agent)
        return profile if profile is not None else empty_profile(agent)

    def predict_for(self, agent: str, scenario: Scenario) -> Prediction:
        """Empty profiles abstain; prediction never requires prior feedback."""
        return predict(self.profile_or_empty(agent), scenario)

    def counterfactuals(self, profile: Profile) -> list[tuple[Disposition, str]]:
        return [
            (disposition, render_counterfactual(disposition, self.labels))
            for observations in profile.repertoire.values()
            for disposition in observations
        ]
