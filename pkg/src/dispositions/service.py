"""HTTP face of the engine.

All request bodies are validated by the domain validators, so error
responses carry the same machine-readable violation lists everywhere:
``{"errors": [{"code", "path", "message"}]}`` with status 400 for bad
payloads, 404 for unknown ids, and 409 for out-of-order submissions.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Optional

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

from .corpus import Corpus, scenario_record
from .elicitation import (
    Disposition,
    Pole,
    PoleLabelTable,
    VerdictMismatch,
    render_counterfactual,
)
from .engine import Engine
from .model import (
    Scenario,
    SchemaViolation,
    ValidationError,
    Violation,
    category_of,
    validate_scenario,
)
from .profile import AgentMismatch, DominantPole, Prediction, Profile, summarize
from .serde import disposition_json, verdict_json
from .session import Session, SessionComplete, WrongScenario


def _errors(status: int, violations: list[Violation]) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"errors": [violation.to_json() for violation in violations]},
    )


def _single_error(status: int, code: str, message: str) -> JSONResponse:
    return _errors(status, [Violation(code, "", message)])


def _exact(value: Fraction) -> dict[str, Any]:
    return {"value": float(value), "exact": str(value)}


def scenario_view(corpus: Corpus, scenario: Scenario) -> dict[str, Any]:
    view = scenario_record(scenario)
    view["corpus"] = corpus.id
    view["category"] = str(category_of(scenario))
    return view


def session_view(
    engine: Engine, session: Session, next_up: Optional[Scenario]
) -> dict[str, Any]:
    corpus = engine.session_corpus(session)
    return {
        "session": session.id,
        "agent": session.agent,
        "corpus": session.corpus,
        "cursor": session.cursor,
        "total": len(session.order),
        "done": session.done,
        "next": None if next_up is None else scenario_view(corpus, next_up),
    }


def disposition_view(labels: PoleLabelTable, disposition: Disposition) -> dict[str, Any]:
    view = disposition_json(disposition)
    view["label"] = labels.label(disposition.dimension, disposition.pole)
    view["counterfactual"] = render_counterfactual(disposition, labels)
    return view


def profile_view(labels: PoleLabelTable, profile: Profile) -> dict[str, Any]:
    summaries = []
    for dimension, stimulus in profile.repertoire:
        summary = summarize(profile, dimension, stimulus)
        if summary is None:
            continue
        label = None
        if summary.dominant_pole is not DominantPole.TIED:
            label = labels.label(dimension, Pole(summary.dominant_pole.value))
        summaries.append(
            {
                "dimension": dimension.value,
                "category": [p.value for p in stimulus.parameters()],
                "category_label": str(stimulus),
                "dominant_pole": summary.dominant_pole.value,
                "label": label,
                "mean_grade": _exact(summary.mean_grade),
                "support": summary.support,
                "consistency": _exact(summary.consistency),
            }
        )
    return {
        "agent": profile.agent,
        "size": profile.size,
        "summaries": summaries,
        "counterfactuals": [
            {
                "dimension": disposition.dimension.value,
                "category_label": str(disposition.stimulus),
                "label": labels.label(disposition.dimension, disposition.pole),
                "text": render_counterfactual(disposition, labels),
            }
            for observations in profile.repertoire.values()
            for disposition in observations
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


def prediction_view(prediction: Prediction) -> dict[str, Any]:
    return {
        "scenario": prediction.scenario,
        "category": str(prediction.category),
        "response": prediction.response.value,
        "confidence": _exact(prediction.confidence),
        "votes": [
            {
                "parameter": vote.parameter.value,
                "dimension": vote.dimension.value,
                "polarity": vote.polarity.value,
                "choice": vote.choice.value,
                "weight": _exact(vote.weight),
                "summary": {
                    "dominant_pole": vote.summary.dominant_pole.value,
                    "mean_grade": _exact(vote.summary.mean_grade),
                    "support": vote.summary.support,
                    "consistency": _exact(vote.summary.consistency),
                },
            }
            for vote in prediction.votes
        ],
    }


def _required_str(payload: Mapping, key: str) -> str:
    value = payload.get(key)
    if not isinstance(value, str) or not value.strip():
        raise ValidationError(
            [Violation("missing_field", key, f"'{key}' must be a non-empty string")]
        )
    return value


def _payload_mapping(payload: Any) -> Mapping:
    if not isinstance(payload, Mapping):
        raise ValidationError(
            [Violation("invalid_type", "", "request body must be a JSON object")]
        )
    return payload


def create_app(engine: Engine, ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="dispositions", docs_url=None, redoc_url=None)

    @app.exception_handler(ValidationError)
    async def on_validation_error(request: Request, exc: ValidationError):
        return _errors(400, list(exc.violations))

    @app.exception_handler(SchemaViolation)
    async def on_schema_violation(request: Request, exc: SchemaViolation):
        return _errors(400, [Violation("schema_violation", exc.path, exc.message)])

    @app.exception_handler(RequestValidationError)
    async def on_request_error(request: Request, exc: RequestValidationError):
        violations = [
            Violation(
                "invalid_request",
                ".".join(str(part) for part in error.get("loc", ())),
                error.get("msg", "invalid request"),
            )
            for error in exc.errors()
        ]
        return _errors(400, violations)

    @app.exception_handler(KeyError)
    async def on_missing(request: Request, exc: KeyError):
        message = exc.args[0] if exc.args else "not found"
        return _single_error(404, "not_found", str(message))

    @app.exception_handler(WrongScenario)
    async def on_wrong_scenario(request: Request, exc: WrongScenario):
        return _single_error(409, "wrong_scenario", str(exc))

    @app.exception_handler(SessionComplete)
    async def on_session_complete(request: Request, exc: SessionComplete):
        return _single_error(409, "session_complete", str(exc))

    @app.exception_handler(AgentMismatch)
    async def on_agent_mismatch(request: Request, exc: AgentMismatch):
        return _single_error(409, "agent_mismatch", str(exc))

    @app.exception_handler(VerdictMismatch)
    async def on_verdict_mismatch(request: Request, exc: VerdictMismatch):
        return _single_error(409, "verdict_mismatch", str(exc))

    @app.get("/")
    async def index() -> dict:
        return {
            "service": "dispositions",
            "corpora": sorted(engine.corpora),
            "ui": "/ui/" if ui_dir is not None else None,
        }

    @app.get("/corpora")
    async def corpora() -> dict:
        return {
            "corpora": [
                {"id": corpus.id, "scenarios": len(corpus)}
                for corpus in engine.corpora.values()
            ]
        }

    @app.get("/scenarios")
    async def scenarios(corpus: Optional[str] = None) -> dict:
        return {
            "scenarios": [
                scenario_view(owner, scenario)
                for owner, scenario in engine.scenarios(corpus)
            ]
        }

    @app.get("/scenarios/{scenario_id}")
    async def scenario(scenario_id: str) -> dict:
        owner, found = engine.find_scenario(scenario_id)
        return scenario_view(owner, found)

    @app.post("/sessions", status_code=201)
    async def start_session(payload: Any = Body(None)) -> dict:
        body = _payload_mapping(payload)
        agent = _required_str(body, "agent")
        corpus_id = body.get("corpus")
        if corpus_id is not None and not isinstance(corpus_id, str):
            raise ValidationError(
                [Violation("invalid_type", "corpus", "'corpus' must be a string")]
            )
        session, first = engine.start_session(agent, corpus_id)
        return session_view(engine, session, first)

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str) -> dict:
        session = engine.get_session(session_id)
        return session_view(
            engine, session, engine.current_scenario(session_id)
        )

    @app.post("/sessions/{session_id}/feedback")
    async def post_feedback(session_id: str, payload: Any = Body(None)) -> dict:
        body = dict(_payload_mapping(payload))
        verdict, dispositions, session, next_up = engine.submit(session_id, body)
        view = session_view(engine, session, next_up)
        view["verdict"] = verdict_json(verdict)
        view["dispositions"] = [
            disposition_view(engine.labels, disposition)
            for disposition in dispositions
        ]
        return view

    @app.get("/sessions/{session_id}/export")
    async def export(session_id: str) -> Response:
        return Response(
            content=engine.export(session_id), media_type="application/json"
        )

    @app.get("/agents/{agent}/profile")
    async def agent_profile(agent: str) -> Any:
        profile = engine.profile(agent)
        if profile is None:
            return _single_error(404, "not_found", f"no profile for agent {agent!r}")
        return profile_view(engine.labels, profile)

    @app.post("/agents/{agent}/predict")
    async def agent_predict(agent: str, payload: Any = Body(None)) -> dict:
        body = _payload_mapping(payload)
        raw = body.get("scenario")
        if isinstance(raw, str) and raw:
            _, scenario = engine.find_scenario(raw)
        elif isinstance(raw, Mapping):
            record = dict(raw)
            record.setdefault("id", "what-if")
            scenario = validate_scenario(record)
        else:
            raise ValidationError(
                [
                    Violation(
                        "missing_field",
                        "scenario",
                        "'scenario' must be a scenario id or an inline scenario object",
                    )
                ]
            )
        prediction = engine.predict_for(agent, scenario)
        view = prediction_view(prediction)
        view["agent"] = agent
        return view

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
