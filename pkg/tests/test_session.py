import json

import pytest
from helpers import ratings, sound_feedback
from hypothesis import given
from hypothesis import strategies as st

from dispositions.corpus import Corpus
from dispositions.model import Feedback, Response
from dispositions.profile import AgentMismatch, empty_profile, observe
from dispositions.session import (
    SessionComplete,
    WrongScenario,
    export_session,
    new_session,
    next_scenario,
    replay_export,
    session_document,
    session_from_document,
    submit_feedback,
)
from dispositions.soundness import SoundnessConfig, Verdict


def feedback_for(scenario_id, response="yes", **justification):
    return Feedback(
        agent="a",
        scenario=scenario_id,
        response=Response(response),
        justification=ratings(**justification),
    )


class TestLifecycle:
    def test_fresh_session_follows_corpus_order(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        assert session.order == ("postoffice", "fruits")
        assert session.cursor == 0
        assert not session.done
        assert next_scenario(session, demo_corpus).id == "postoffice"

    def test_empty_corpus_session_is_born_done(self):
        corpus = Corpus(id="empty", scenarios=())
        session = new_session("s-1", "a", corpus)
        assert session.done
        assert next_scenario(session, corpus) is None

    def test_randomized_order_is_stable_per_session_id(self, synthetic_corpus):
        first = new_session("seed", "a", synthetic_corpus, randomize=True)
        second = new_session("seed", "a", synthetic_corpus, randomize=True)
        other = new_session("other", "a", synthetic_corpus, randomize=True)
        assert first.order == second.order
        assert sorted(first.order) == sorted(s.id for s in synthetic_corpus)
        assert other.order != first.order or len(synthetic_corpus) <= 1

    def test_corpus_mismatch_rejected(self, demo_corpus, synthetic_corpus):
        session = new_session("s-1", "a", demo_corpus)
        with pytest.raises(ValueError):
            next_scenario(session, synthetic_corpus)


class TestSubmitFeedback:
    def advance_past_postoffice(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("postoffice", "yes", P1=5)
        )
        return session

    def test_sound_answer_elicits_and_advances(self, demo_corpus):
        session = self.advance_past_postoffice(demo_corpus)
        verdict, dispositions, session = submit_feedback(
            session, demo_corpus, feedback_for("fruits", "yes", P4=1)
        )
        assert verdict.overall is Verdict.SOUND
        assert len(dispositions) == 1
        assert dispositions[0].grade == 1
        assert session.cursor == 2
        assert session.done

    def test_unsound_answer_still_advances(self, demo_corpus):
        session = self.advance_past_postoffice(demo_corpus)
        verdict, dispositions, session = submit_feedback(
            session, demo_corpus, feedback_for("fruits", "yes", P4=4)
        )
        assert verdict.overall is Verdict.UNSOUND
        assert dispositions == ()
        assert session.done

    def test_original_session_untouched(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        submit_feedback(session, demo_corpus, feedback_for("postoffice", "yes", P1=5))
        assert session.cursor == 0

    def test_wrong_scenario(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        with pytest.raises(WrongScenario):
            submit_feedback(session, demo_corpus, feedback_for("fruits", "yes", P4=1))

    def test_session_complete(self, demo_corpus):
        session = self.advance_past_postoffice(demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("fruits", "yes", P4=1)
        )
        with pytest.raises(SessionComplete):
            submit_feedback(session, demo_corpus, feedback_for("fruits", "yes", P4=1))

    def test_agent_mismatch(self, demo_corpus):
        session = new_session("s-1", "someone else", demo_corpus)
        with pytest.raises(AgentMismatch):
            submit_feedback(
                session, demo_corpus, feedback_for("postoffice", "yes", P1=5)
            )

    def test_custom_config_is_applied(self, demo_corpus):
        session = self.advance_past_postoffice(demo_corpus)
        strict = SoundnessConfig(low_max=1, high_min=5)
        verdict, _, _ = submit_feedback(
            session, demo_corpus, feedback_for("fruits", "yes", P4=2), strict
        )
        assert verdict.overall is Verdict.INDETERMINATE


class TestDocuments:
    def completed_session(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("postoffice", "yes", P1=5)
        )
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("fruits", "no", P4=4)
        )
        return session

    def test_document_round_trip(self, demo_corpus):
        session = self.completed_session(demo_corpus)
        assert session_from_document(session_document(session)) == session

    def test_half_done_round_trip(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("postoffice", "no", P1=2)
        )
        restored = session_from_document(session_document(session))
        assert restored.cursor == 1
        assert next_scenario(restored, demo_corpus).id == "fruits"


class TestExportAndReplay:
    def test_export_carries_everything(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("postoffice", "yes", P1=5)
        )
        doc = json.loads(export_session(session, demo_corpus))
        assert doc["agent"] == "a"
        assert doc["corpus"] == "demo"
        assert [s["id"] for s in doc["scenarios"]] == ["postoffice", "fruits"]
        assert len(doc["records"]) == 1
        assert doc["soundness"] == {
            "low_max": 2,
            "high_min": 4,
            "neutral_policy": "indeterminate",
            "combinator": "all",
        }

    def test_empty_session_exports_no_records(self, demo_corpus):
        doc = json.loads(export_session(new_session("s-1", "a", demo_corpus), demo_corpus))
        assert doc["records"] == []

    def test_replay_recomputes_identical_records(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("postoffice", "yes", P1=5)
        )
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("fruits", "yes", P4=4)
        )
        replay = replay_export(export_session(session, demo_corpus))
        assert replay.agent == "a"
        assert replay.records == session.collected

    def test_replay_rebuilds_the_profile(self, demo_corpus):
        session = new_session("s-1", "a", demo_corpus)
        profile = empty_profile("a")
        for scenario_id, response, rating in [
            ("postoffice", "yes", {"P1": 5}),
            ("fruits", "no", {"P4": 5}),
        ]:
            feedback = feedback_for(scenario_id, response, **rating)
            verdict, dispositions, session = submit_feedback(
                session, demo_corpus, feedback
            )
            profile = observe(profile, feedback, verdict, dispositions)
        replay = replay_export(export_session(session, demo_corpus))
        assert replay.profile == profile

    def test_replay_respects_embedded_config(self, demo_corpus):
        strict = SoundnessConfig(low_max=1, high_min=5)
        session = new_session("s-1", "a", demo_corpus)
        _, _, session = submit_feedback(
            session, demo_corpus, feedback_for("postoffice", "yes", P1=4), strict
        )
        replay = replay_export(export_session(session, demo_corpus, strict))
        assert replay.config == strict
        assert replay.records[0].verdict.overall is Verdict.INDETERMINATE

    @given(rng=st.randoms(use_true_random=False))
    def test_replay_round_trips_random_runs(self, synthetic_corpus, rng):
        session = new_session("s-1", "a", synthetic_corpus, randomize=True)
        profile = empty_profile("a")
        while not session.done:
            scenario = next_scenario(session, synthetic_corpus)
            feedback = sound_feedback(rng, "a", scenario)
            verdict, dispositions, session = submit_feedback(
                session, synthetic_corpus, feedback
            )
            profile = observe(profile, feedback, verdict, dispositions)
        replay = replay_export(export_session(session, synthetic_corpus))
        assert replay.profile == profile
        assert replay.records == session.collected
