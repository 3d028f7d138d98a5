"""Command line driver.

Subcommands: ``validate`` corpus files, ``run`` a questionnaire session,
``sound`` a single judgement, ``profile show``, ``predict``, and ``serve``
the HTTP API.  Read commands take ``--format json`` for scripting; exit
status is 0 on success and 1 on any validation or I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import uuid
from pathlib import Path
from typing import Optional

from .config import ConfigError, load_config
from .corpus import Corpus, load_corpus_file
from .elicitation import Disposition, PoleLabelTable, render_counterfactual
from .engine import Engine
from .model import (
    PARAMETERS,
    Feedback,
    Parameter,
    Response,
    Scenario,
    SchemaViolation,
    ValidationError,
    category_of,
    validate_feedback,
)
from .profile import empty_profile, observe, predict
from .serde import verdict_json
from .service import create_app, disposition_view, prediction_view, profile_view
from .session import (
    CollectedRecord,
    SessionComplete,
    WrongScenario,
    export_session,
    new_session,
    next_scenario,
    submit_feedback,
)
from .soundness import SoundnessVerdict, sound
from .store import ProfileStore

DEFAULT_CORPUS = Path("fixtures") / "demo-corpus.json"
DEFAULT_STORE = Path("storage")


class CliError(Exception):
    """A usage problem worth a message and exit status 1, not a traceback."""


def parse_justification(text: str) -> dict[Parameter, int]:
    """Parse ``P1=1,P2=3,P3=5,P4=2``; every parameter must be rated."""
    values: dict[Parameter, int] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, raw = chunk.partition("=")
        if not sep:
            raise CliError(f"justification entries look like P1=3, got {chunk!r}")
        try:
            parameter = Parameter(name.strip())
        except ValueError:
            raise CliError(f"unknown parameter {name.strip()!r}") from None
        if parameter in values:
            raise CliError(f"duplicate rating for {parameter.value}")
        try:
            value = int(raw.strip())
        except ValueError:
            raise CliError(
                f"rating for {parameter.value} must be an integer, got {raw.strip()!r}"
            ) from None
        if not 1 <= value <= 5:
            raise CliError(f"rating for {parameter.value} must be in 1..5, got {value}")
        values[parameter] = value
    missing = [p.value for p in PARAMETERS if p not in values]
    if missing:
        raise CliError(
            f"justification must rate every parameter; missing {', '.join(missing)}"
        )
    return values


def load_corpus_arg(raw: str) -> Corpus:
    path = Path(raw)
    if not path.is_file():
        raise CliError(f"corpus file not found: {path} (pass --corpus)")
    return load_corpus_file(path)


def find_scenario(corpus: Corpus, scenario_id: str) -> Scenario:
    try:
        return corpus.scenario(scenario_id)
    except KeyError:
        raise CliError(
            f"no scenario {scenario_id!r} in corpus {corpus.id!r}"
        ) from None


def show_scenario(index: int, total: int, scenario: Scenario) -> None:
    print(f"[{index}/{total}] {scenario.id}  (category {category_of(scenario)})")
    print(f"  Setting: {scenario.setting}")
    print(f"  Problem: {scenario.problem}")
    print(f"  Action:  {scenario.action}")


def show_verdict(verdict: SoundnessVerdict, indent: str = "  ") -> None:
    print(f"{indent}Verdict: {verdict.overall.value}")
    for parameter in sorted(verdict.per_parameter):
        judged = verdict.per_parameter[parameter]
        print(
            f"{indent}  {parameter.value}: observed {judged.observed.value}, "
            f"expected {judged.expected.value} -> {judged.verdict.value}"
        )


def show_dispositions(
    dispositions: tuple[Disposition, ...], labels: PoleLabelTable
) -> None:
    if not dispositions:
        print("  Elicited: nothing")
        return
    for disposition in dispositions:
        label = labels.label(disposition.dimension, disposition.pole)
        print(f"  Elicited: {label} (grade {disposition.grade}/5)")
        print(f"    {render_counterfactual(disposition, labels)}")


def prompt_response(scenario: Scenario) -> Response:
    while True:
        raw = input(f"  Would you {scenario.action}? [yes/no] ").strip().lower()
        if raw in ("yes", "y"):
            return Response.YES
        if raw in ("no", "n"):
            return Response.NO
        print("  Please answer yes or no.")


def prompt_justification() -> dict[Parameter, int]:
    values: dict[Parameter, int] = {}
    for parameter in PARAMETERS:
        while True:
            raw = input(f"  {parameter.value} ({parameter.question}) [1-5] ").strip()
            try:
                value = int(raw)
            except ValueError:
                print("  Please enter an integer from 1 to 5.")
                continue
            if 1 <= value <= 5:
                values[parameter] = value
                break
            print("  Please enter an integer from 1 to 5.")
    return values


def cmd_validate(args: argparse.Namespace) -> int:
    reports = []
    failed = False
    for raw in args.corpus:
        path = Path(raw)
        report = {"path": str(path), "ok": True, "scenarios": 0, "violations": []}
        try:
            corpus = load_corpus_file(path)
            report["scenarios"] = len(corpus)
        except OSError as exc:
            report["ok"] = False
            report["violations"] = [
                {"code": "io_error", "path": "", "message": str(exc)}
            ]
        except ValidationError as exc:
            report["ok"] = False
            report["violations"] = [v.to_json() for v in exc.violations]
        failed = failed or not report["ok"]
        reports.append(report)
    if args.format == "json":
        print(json.dumps({"files": reports}, indent=2))
    else:
        for report in reports:
            if report["ok"]:
                print(f"OK {report['path']} ({report['scenarios']} scenarios)")
            else:
                print(f"INVALID {report['path']}")
                for violation in report["violations"]:
                    where = violation["path"] or "$"
                    print(
                        f"  {violation['code']} at {where}: {violation['message']}"
                    )
    return 1 if failed else 0


def cmd_run(args: argparse.Namespace) -> int:
    corpus = load_corpus_arg(args.corpus)
    answers = None
    if args.answers:
        answers = json.loads(Path(args.answers).read_text("utf-8"))
        if not isinstance(answers, list):
            raise CliError("answers file must be a JSON array")
    elif not args.interactive:
        raise CliError("pass --interactive or --answers FILE")

    labels = PoleLabelTable.default()
    session = new_session(
        uuid.uuid4().hex, args.agent, corpus, randomize=args.randomize
    )
    total = len(session.order)
    records: list[CollectedRecord] = []
    while True:
        scenario = next_scenario(session, corpus)
        if scenario is None:
            break
        if answers is not None and session.cursor >= len(answers):
            print("(answers exhausted; stopping early)")
            break
        show_scenario(session.cursor + 1, total, scenario)
        if answers is not None:
            raw = answers[session.cursor]
            if not isinstance(raw, dict):
                raise CliError(f"answer {session.cursor} must be an object")
            record = {
                "agent": args.agent,
                "scenario": raw.get("scenario", scenario.id),
                "response": raw.get("response"),
                "justification": raw.get("justification"),
            }
            feedback = validate_feedback(record)
            ratings = ", ".join(
                f"{p.value}={feedback.justification[p]}" for p in PARAMETERS
            )
            print(f"  Response: {feedback.response.value}  ({ratings})")
        else:
            response = prompt_response(scenario)
            feedback = Feedback(
                agent=args.agent,
                scenario=scenario.id,
                response=response,
                justification=prompt_justification(),
            )
        verdict, dispositions, session = submit_feedback(session, corpus, feedback)
        show_verdict(verdict)
        show_dispositions(dispositions, labels)
        print()
        records.append(session.collected[-1])

    elicited = sum(len(record.dispositions) for record in records)
    print(
        f"Answered {len(records)}/{total} scenarios; "
        f"{elicited} disposition(s) elicited."
    )
    if args.store:
        store = ProfileStore(Path(args.store) / "profiles")

        def fold(profile):
            for record in records:
                profile = observe(
                    profile, record.feedback, record.verdict, record.dispositions
                )
            return profile

        store.update(args.agent, fold)
        print(f"Profile for {args.agent!r} updated under {args.store}")
    if args.export:
        Path(args.export).write_bytes(export_session(session, corpus))
        print(f"Session exported to {args.export}")
    return 0


def cmd_sound(args: argparse.Namespace) -> int:
    corpus = load_corpus_arg(args.corpus)
    scenario = find_scenario(corpus, args.scenario)
    justification = parse_justification(args.justification)
    verdict = sound(scenario, Response(args.response), justification)
    if args.format == "json":
        print(json.dumps(verdict_json(verdict), indent=2))
    else:
        print(verdict.overall.value)
        show_verdict(verdict, indent="")
    return 0


def cmd_profile_show(args: argparse.Namespace) -> int:
    store = ProfileStore(Path(args.store) / "profiles")
    profile = store.load(args.agent)
    if profile is None:
        print(f"error: no profile for agent {args.agent!r}", file=sys.stderr)
        return 1
    view = profile_view(PoleLabelTable.default(), profile)
    if args.format == "json":
        print(json.dumps(view, indent=2))
        return 0
    print(
        f"Agent {profile.agent}: {view['size']} observation(s) from "
        f"{len(view['audit'])} feedback(s)"
    )
    for summary in view["summaries"]:
        label = summary["label"] or "tied"
        print(
            f"  {summary['dimension']} @ {summary['category_label']}: {label}, "
            f"mean grade {summary['mean_grade']['exact']}, "
            f"support {summary['support']}, "
            f"consistency {summary['consistency']['exact']}"
        )
    for counterfactual in view["counterfactuals"]:
        print(f"  {counterfactual['text']}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    corpus = load_corpus_arg(args.corpus)
    scenario = find_scenario(corpus, args.scenario)
    store = ProfileStore(Path(args.store) / "profiles")
    profile = store.load(args.agent)
    if profile is None:
        profile = empty_profile(args.agent)
    prediction = predict(profile, scenario)
    view = prediction_view(prediction)
    view["agent"] = args.agent
    if args.format == "json":
        print(json.dumps(view, indent=2))
        return 0
    if prediction.votes:
        confidence = f" (confidence {prediction.confidence})"
    else:
        confidence = " (no applicable dispositions)"
    print(f"{prediction.response.value}{confidence}")
    for vote in prediction.votes:
        print(
            f"  {vote.parameter.value} {vote.dimension.value}: {vote.choice.value}, "
            f"weight {vote.weight}"
        )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    config = load_config(args.config)
    engine = Engine.from_config(config)
    app = create_app(engine, config.ui_dir)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dispo",
        description=(
            "Judge questionnaire feedback against pressed parameters and "
            "maintain per-agent disposition profiles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check corpus files, listing every violation")
    p.add_argument("corpus", nargs="+", help="corpus JSON file(s)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("run", help="answer a corpus as one agent")
    p.add_argument("--corpus", default=str(DEFAULT_CORPUS))
    p.add_argument("--agent", required=True)
    p.add_argument("--interactive", action="store_true", help="prompt on the terminal")
    p.add_argument("--answers", help="JSON array of {response, justification} records")
    p.add_argument("--randomize", action="store_true", help="shuffle scenario order")
    p.add_argument("--store", help="storage directory to update the profile under")
    p.add_argument("--export", help="write the session export document here")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("sound", help="judge one response + justification")
    p.add_argument("--corpus", default=str(DEFAULT_CORPUS))
    p.add_argument("--scenario", required=True)
    p.add_argument("--response", required=True, choices=("yes", "no"))
    p.add_argument("--justification", required=True, help="P1=..,P2=..,P3=..,P4=..")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_sound)

    p = sub.add_parser("profile", help="inspect stored profiles")
    profile_sub = p.add_subparsers(dest="profile_command", required=True)
    show = profile_sub.add_parser("show", help="print summaries and counterfactuals")
    show.add_argument("--agent", required=True)
    show.add_argument("--store", default=str(DEFAULT_STORE))
    show.add_argument("--format", choices=("text", "json"), default="text")
    show.set_defaults(handler=cmd_profile_show)

    p = sub.add_parser("predict", help="predict an agent's response to a scenario")
    p.add_argument("--agent", required=True)
    p.add_argument("--scenario", required=True)
    p.add_argument("--corpus", default=str(DEFAULT_CORPUS))
    p.add_argument("--store", default=str(DEFAULT_STORE))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", required=True)
    p.set_defaults(handler=cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        for violation in exc.violations:
            print(
                f"error: {violation.code} at {violation.path or '$'}: "
                f"{violation.message}",
                file=sys.stderr,
            )
        return 1
    except (SchemaViolation, ConfigError, WrongScenario, SessionComplete) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EOFError:
        print("error: input ended", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
