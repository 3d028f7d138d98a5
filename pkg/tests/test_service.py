import json

import pytest
from fastapi.testclient import TestClient

from dispositions.corpus import load_corpus_file
from dispositions.elicitation import PoleLabelTable
from dispositions.engine import Engine
from dispositions.service import create_app
from dispositions.session import replay_export
from dispositions.soundness import DEFAULT_CONFIG

from conftest import FIXTURES


@pytest.fixture()
def client(tmp_path):
    engine = Engine(
        corpora=[
            load_corpus_file(FIXTURES / "demo-corpus.json"),
            load_corpus_file(FIXTURES / "synthetic-corpus.json"),
        ],
        storage_dir=tmp_path,
        soundness=DEFAULT_CONFIG,
        labels=PoleLabelTable.default(),
    )
    with TestClient(create_app(engine)) as client:
        yield client


def start(client, agent="a", corpus="demo"):
    response = client.post("/sessions", json={"agent": agent, "corpus": corpus})
    assert response.status_code == 201
    return response.json()


def answer(client, session, scenario, response, **ratings):
    justification = {"P1": 3, "P2": 3, "P3": 3, "P4": 3}
    justification.update(ratings)
    return client.post(
        f"/sessions/{session}/feedback",
        json={
            "scenario": scenario,
            "response": response,
            "justification": justification,
        },
    )


class TestCatalogue:
    def test_index_lists_corpora(self, client):
        body = client.get("/").json()
        assert body["corpora"] == ["demo", "synthetic"]

    def test_corpora_counts(self, client):
        body = client.get("/corpora").json()
        assert {"id": "demo", "scenarios": 2} in body["corpora"]

    def test_scenarios_filtered_by_corpus(self, client):
        body = client.get("/scenarios", params={"corpus": "demo"}).json()
        assert [s["id"] for s in body["scenarios"]] == ["postoffice", "fruits"]

    def test_scenarios_unfiltered_span_all_corpora(self, client):
        body = client.get("/scenarios").json()
        assert len(body["scenarios"]) == 8

    def test_single_scenario_view(self, client):
        body = client.get("/scenarios/fruits").json()
        assert body["corpus"] == "demo"
        assert body["category"] == "{P4}"
        assert body["press"] == ["P4"]
        assert body["polarity"] == {"P4": "opposed"}

    def test_unknown_scenario_404(self, client):
        response = client.get("/scenarios/nope")
        assert response.status_code == 404
        assert response.json()["errors"][0]["code"] == "not_found"

    def test_unknown_corpus_404(self, client):
        assert client.get("/scenarios", params={"corpus": "x"}).status_code == 404


class TestSessionFlow:
    def test_start_serves_the_first_scenario(self, client):
        body = start(client)
        assert body["cursor"] == 0
        assert body["total"] == 2
        assert body["done"] is False
        assert body["next"]["id"] == "postoffice"

    def test_full_wizard_flow(self, client):
        session = start(client)["session"]

        first = answer(client, session, "postoffice", "yes", P1=5).json()
        assert first["verdict"]["overall"] == "sound"
        assert first["dispositions"][0]["label"] == "altruistic"
        assert first["next"]["id"] == "fruits"

        second = answer(client, session, "fruits", "yes", P4=1).json()
        assert second["verdict"]["overall"] == "sound"
        assert second["dispositions"][0]["label"] == "law defying"
        assert second["dispositions"][0]["counterfactual"] == (
            "if a were in a scenario of category {P4}, "
            "a would take the action (law defying, grade 1/5)"
        )
        assert second["done"] is True
        assert second["next"] is None

        profile = client.get("/agents/a/profile").json()
        assert profile["size"] == 2
        labels = {s["label"] for s in profile["summaries"]}
        assert labels == {"altruistic", "law defying"}
        assert len(profile["audit"]) == 2

    def test_feedback_agent_defaults_to_session_agent(self, client):
        session = start(client)["session"]
        response = answer(client, session, "postoffice", "yes", P1=5)
        assert response.status_code == 200

    def test_session_resumable_via_get(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "no", P1=2)
        body = client.get(f"/sessions/{session}").json()
        assert body["cursor"] == 1
        assert body["next"]["id"] == "fruits"

    def test_unsound_feedback_reports_per_parameter_verdicts(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "yes", P1=5)
        body = answer(client, session, "fruits", "yes", P4=4).json()
        assert body["verdict"]["overall"] == "unsound"
        assert body["verdict"]["per_parameter"] == {
            "P4": {"observed": "high", "expected": "low", "verdict": "unsound"}
        }
        assert body["dispositions"] == []

    def test_export_replays_cleanly(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "yes", P1=5)
        answer(client, session, "fruits", "no", P4=5)
        exported = client.get(f"/sessions/{session}/export")
        assert exported.status_code == 200
        replay = replay_export(exported.content)
        assert replay.agent == "a"
        assert len(replay.records) == 2
        assert replay.profile.size == 2


class TestSessionErrors:
    def test_out_of_order_feedback_409(self, client):
        session = start(client)["session"]
        response = answer(client, session, "fruits", "yes", P4=1)
        assert response.status_code == 409
        assert response.json()["errors"][0]["code"] == "wrong_scenario"

    def test_completed_session_409(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "yes", P1=5)
        answer(client, session, "fruits", "yes", P4=1)
        response = answer(client, session, "fruits", "yes", P4=1)
        assert response.status_code == 409
        assert response.json()["errors"][0]["code"] == "session_complete"

    def test_foreign_agent_409(self, client):
        session = start(client)["session"]
        response = client.post(
            f"/sessions/{session}/feedback",
            json={
                "agent": "b",
                "scenario": "postoffice",
                "response": "yes",
                "justification": {"P1": 5, "P2": 3, "P3": 3, "P4": 3},
            },
        )
        assert response.status_code == 409
        assert response.json()["errors"][0]["code"] == "agent_mismatch"

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/none").status_code == 404
        assert client.post("/sessions/none/feedback", json={}).status_code == 404

    def test_bad_feedback_collects_violations(self, client):
        session = start(client)["session"]
        response = client.post(
            f"/sessions/{session}/feedback",
            json={
                "scenario": "postoffice",
                "response": "maybe",
                "justification": {"P1": 9, "P2": 3, "P3": 3},
            },
        )
        assert response.status_code == 400
        codes = {e["code"] for e in response.json()["errors"]}
        assert codes == {"unknown_response", "value_out_of_range", "missing_parameter"}
        paths = {e["path"] for e in response.json()["errors"]}
        assert "justification.P1" in paths

    def test_session_needs_an_agent(self, client):
        response = client.post("/sessions", json={})
        assert response.status_code == 400
        assert response.json()["errors"][0]["path"] == "agent"

    def test_non_object_body_400(self, client):
        response = client.post("/sessions", json=["not", "an", "object"])
        assert response.status_code == 400

    def test_unknown_corpus_on_start_404(self, client):
        response = client.post("/sessions", json={"agent": "a", "corpus": "x"})
        assert response.status_code == 404


class TestProfileAndPredict:
    def test_unknown_agent_profile_404(self, client):
        response = client.get("/agents/stranger/profile")
        assert response.status_code == 404

    def test_profile_spells_out_exact_fractions(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "yes", P1=5)
        answer(client, session, "fruits", "yes", P4=2)
        summaries = client.get("/agents/a/profile").json()["summaries"]
        law = next(s for s in summaries if s["dimension"] == "legality")
        assert law["mean_grade"] == {"value": 2.0, "exact": "2"}
        assert law["consistency"] == {"value": 1.0, "exact": "1"}
        assert law["support"] == 1
        assert law["category"] == ["P4"]

    def test_predict_round_trips_recorded_behaviour(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "yes", P1=5)
        answer(client, session, "fruits", "yes", P4=1)
        body = client.post("/agents/a/predict", json={"scenario": "fruits"}).json()
        assert body["response"] == "yes"
        assert body["confidence"] == {"value": 1.0, "exact": "1"}
        assert body["votes"][0]["dimension"] == "legality"

    def test_predict_inline_what_if(self, client):
        session = start(client)["session"]
        answer(client, session, "postoffice", "yes", P1=5)
        answer(client, session, "fruits", "yes", P4=1)
        body = client.post(
            "/agents/a/predict",
            json={
                "scenario": {
                    "setting": "a shop with a till left open",
                    "problem": "nobody is watching the counter",
                    "action": "take the cash",
                    "press": ["P4"],
                    "polarity": {"P4": "opposed"},
                }
            },
        ).json()
        assert body["scenario"] == "what-if"
        assert body["response"] == "yes"

    def test_predict_with_no_profile_abstains(self, client):
        body = client.post("/agents/ghost/predict", json={"scenario": "fruits"}).json()
        assert body["response"] == "abstain"
        assert body["confidence"]["exact"] == "0"

    def test_predict_needs_a_scenario(self, client):
        response = client.post("/agents/a/predict", json={})
        assert response.status_code == 400

    def test_predict_validates_inline_scenario(self, client):
        response = client.post(
            "/agents/a/predict",
            json={"scenario": {"setting": "", "press": ["P9"]}},
        )
        assert response.status_code == 400
        codes = {e["code"] for e in response.json()["errors"]}
        assert "unknown_parameter" in codes


class TestPersistenceAcrossApps:
    def test_profiles_survive_a_restart(self, tmp_path):
        def engine():
            return Engine(
                corpora=[load_corpus_file(FIXTURES / "demo-corpus.json")],
                storage_dir=tmp_path,
                soundness=DEFAULT_CONFIG,
                labels=PoleLabelTable.default(),
            )

        with TestClient(create_app(engine())) as client:
            session = start(client, corpus=None)["session"]
            answer(client, session, "postoffice", "yes", P1=5)
        with TestClient(create_app(engine())) as client:
            profile = client.get("/agents/a/profile")
            assert profile.status_code == 200
            assert profile.json()["size"] == 1
            resumed = client.get(f"/sessions/{session}").json()
            assert resumed["cursor"] == 1
