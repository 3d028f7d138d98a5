"""Questionnaire domain model: parameters, scenarios, feedback, categories.

A scenario confronts an agent with a hypothetical action and puts pressure on
a subset of four justification parameters.  Feedback is a yes/no response plus
a 1..5 relevance rating for every parameter.  Scenarios with equal press sets
form a category, which is the granularity at which elicited preferences
generalize to unseen situations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Mapping

SCALE_MIN = 1
SCALE_MAX = 5


class Parameter(str, Enum):
    """A justification parameter.  Ordering P1 < P2 < P3 < P4 is fixed and is
    the serialization order everywhere."""

    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"

    @property
    def dimension(self) -> "Dimension":
        return _DIMENSION_BY_PARAMETER[self]

    @property
    def question(self) -> str:
        """The questionnaire prompt answered by this parameter's rating."""
        return _QUESTION_BY_PARAMETER[self]


PARAMETERS: tuple[Parameter, ...] = tuple(Parameter)


class Dimension(str, Enum):
    """Determinable axis a parameter is rated on.

    Each dimension pairs a determinable (the axis itself, used as the enum
    value) with the determinate trait expressed at its high end, e.g. high
    ratings on the legality axis express obedience.
    """

    GOODWILL = "goodwill"
    SELF_SERVINGNESS = "self-servingness"
    PRAGMATISM = "pragmatism"
    LEGALITY = "legality"

    @property
    def determinate(self) -> str:
        return _DETERMINATE_BY_DIMENSION[self]

    @property
    def parameter(self) -> Parameter:
        return _PARAMETER_BY_DIMENSION[self]


_DIMENSION_BY_PARAMETER = {
    Parameter.P1: Dimension.GOODWILL,
    Parameter.P2: Dimension.SELF_SERVINGNESS,
    Parameter.P3: Dimension.PRAGMATISM,
    Parameter.P4: Dimension.LEGALITY,
}
_PARAMETER_BY_DIMENSION = {d: p for p, d in _DIMENSION_BY_PARAMETER.items()}
_DETERMINATE_BY_DIMENSION = {
    Dimension.GOODWILL: "altruism",
    Dimension.SELF_SERVINGNESS: "egoism",
    Dimension.PRAGMATISM: "expertness",
    Dimension.LEGALITY: "obedience",
}
_QUESTION_BY_PARAMETER = {
    Parameter.P1: "How much did the effect on others weigh on the choice?",
    Parameter.P2: "How much did the effect on myself weigh on the choice?",
    Parameter.P3: "How much did personal experience weigh on the choice?",
    Parameter.P4: "How much did respect for the law weigh on the choice?",
}


class Polarity(str, Enum):
    """Whether performing a scenario's action expresses the high or the low
    end of a pressed parameter's dimension.

    Polarity is a required corpus annotation on every pressed parameter; it is
    never inferred from the scenario text.
    """

    ALIGNED = "aligned"  # acting expresses a high rating
    OPPOSED = "opposed"  # acting expresses a low rating


class Response(str, Enum):
    """A yes/no answer: would the agent perform the scenario's action?"""

    YES = "yes"
    NO = "no"

    def inverted(self) -> "Response":
        return Response.NO if self is Response.YES else Response.YES


def scale_value(value: Any) -> int:
    """Return ``value`` if it is a valid 1..5 rating, else raise ValueError."""
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"scale value must be an integer, got {value!r}")
    if not SCALE_MIN <= value <= SCALE_MAX:
        raise ValueError(
            f"scale value must be in {SCALE_MIN}..{SCALE_MAX}, got {value}"
        )
    return value


def check_agent_id(agent: Any) -> str:
    """Return ``agent`` if it is a usable agent id (non-empty string)."""
    if not isinstance(agent, str) or not agent:
        raise ValueError("agent id must be a non-empty string")
    return agent


@dataclass(frozen=True)
class Category:
    """Equivalence class of scenarios sharing a press set.

    There are exactly 16 categories (one per subset of the four parameters);
    equality is press-set equality.
    """

    press: frozenset[Parameter]

    @classmethod
    def of(cls, parameters: Iterable[Parameter]) -> "Category":
        return cls(frozenset(parameters))

    def parameters(self) -> tuple[Parameter, ...]:
        """Members in fixed P1..P4 order."""
        return tuple(p for p in PARAMETERS if p in self.press)

    def __str__(self) -> str:
        return "{" + ",".join(p.value for p in self.parameters()) + "}"


def all_categories() -> tuple[Category, ...]:
    """All 16 categories, ordered by press-set size then parameter order."""
    subsets = itertools.chain.from_iterable(
        itertools.combinations(PARAMETERS, size)
        for size in range(len(PARAMETERS) + 1)
    )
    return tuple(Category.of(subset) for subset in subsets)


@dataclass(frozen=True)
class Scenario:
    """A questionnaire scenario: three text panes plus press annotations.

    ``polarity`` must annotate exactly the pressed parameters.  Instances are
    immutable values; build them from raw records via :func:`validate_scenario`.
    """

    id: str
    setting: str
    problem: str
    action: str
    press: frozenset[Parameter]
    polarity: Mapping[Parameter, Polarity]

    def __post_init__(self) -> None:
        for name in ("id", "setting", "problem", "action"):
            value = getattr(self, name)
            if not isinstance(value, str) or not value.strip():
                raise ValueError(f"scenario {name} must be non-empty text")
        object.__setattr__(self, "press", frozenset(self.press))
        object.__setattr__(self, "polarity", dict(self.polarity))
        if set(self.polarity) != set(self.press):
            raise ValueError("polarity keys must equal the press set")

    def category(self) -> Category:
        return Category(self.press)


def category_of(scenario: Scenario) -> Category:
    """The category a scenario belongs to; equal press sets, equal category."""
    return scenario.category()


@dataclass(frozen=True)
class Feedback:
    """One agent's answer to one scenario: a response plus a total
    justification assigning a 1..5 rating to every parameter."""

    agent: str
    scenario: str
    response: Response
    justification: Mapping[Parameter, int]

    def __post_init__(self) -> None:
        check_agent_id(self.agent)
        if not isinstance(self.scenario, str) or not self.scenario:
            raise ValueError("feedback must reference a scenario id")
        if not isinstance(self.response, Response):
            raise ValueError(f"response must be yes or no, got {self.response!r}")
        if set(self.justification) != set(PARAMETERS):
            raise ValueError("justification must rate every parameter")
        for parameter in PARAMETERS:
            scale_value(self.justification[parameter])
        object.__setattr__(self, "justification", dict(self.justification))


@dataclass(frozen=True)
class Violation:
    """One machine-readable validation failure, addressed by a document path."""

    code: str
    path: str
    message: str

    def to_json(self) -> dict[str, str]:
        return {"code": self.code, "path": self.path, "message": self.message}


class ValidationError(ValueError):
    """A record failed validation; carries the complete violation list."""

    def __init__(self, violations: Iterable[Violation]):
        self.violations = tuple(violations)
        detail = "; ".join(f"{v.path or '$'}: {v.message}" for v in self.violations)
        super().__init__(detail or "validation failed")


class SchemaViolation(ValueError):
    """A serialized document does not match its schema.  ``path`` points at
    the offending element."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path or '$'}: {message}")


def _text_field(record: Mapping, name: str, violations: list[Violation]) -> str | None:
    value = record.get(name)
    if value is None:
        violations.append(
            Violation("missing_field", name, f"missing required field '{name}'")
        )
        return None
    if not isinstance(value, str):
        violations.append(Violation("invalid_type", name, f"'{name}' must be a string"))
        return None
    if not value.strip():
        violations.append(Violation("empty_text", name, f"'{name}' must not be empty"))
        return None
    return value


def validate_scenario(record: Any) -> Scenario:
    """Build a :class:`Scenario` from a raw mapping.

    Raises :class:`ValidationError` carrying every violation found: missing or
    empty text fields, unknown parameters or polarities, and press/polarity
    key-set mismatches.
    """
    if not isinstance(record, Mapping):
        raise ValidationError(
            [Violation("invalid_type", "", "scenario record must be an object")]
        )
    violations: list[Violation] = []

    scenario_id = _text_field(record, "id", violations)
    setting = _text_field(record, "setting", violations)
    problem = _text_field(record, "problem", violations)
    action = _text_field(record, "action", violations)

    press: set[Parameter] = set()
    raw_press = record.get("press", [])
    press_parsed = isinstance(raw_press, (list, tuple))
    if not press_parsed:
        violations.append(
            Violation("invalid_type", "press", "'press' must be an array of parameter ids")
        )
    else:
        for index, item in enumerate(raw_press):
            try:
                press.add(Parameter(item))
            except ValueError:
                violations.append(
                    Violation(
                        "unknown_parameter",
                        f"press[{index}]",
                        f"unknown parameter {item!r}",
                    )
                )

    polarity: dict[Parameter, Polarity] = {}
    annotated: set[Parameter] = set()
    raw_polarity = record.get("polarity", {})
    if not isinstance(raw_polarity, Mapping):
        violations.append(
            Violation(
                "invalid_type",
                "polarity",
                "'polarity' must be an object keyed by parameter id",
            )
        )
    else:
        for key, value in raw_polarity.items():
            try:
                parameter = Parameter(key)
            except ValueError:
                violations.append(
                    Violation(
                        "unknown_parameter",
                        f"polarity.{key}",
                        f"unknown parameter {key!r}",
                    )
                )
                continue
            annotated.add(parameter)
            try:
                polarity[parameter] = Polarity(value)
            except ValueError:
                violations.append(
                    Violation(
                        "unknown_polarity",
                        f"polarity.{key}",
                        f"polarity must be 'aligned' or 'opposed', got {value!r}",
                    )
                )
        if press_parsed:
            for parameter in PARAMETERS:
                if parameter in press and parameter not in annotated:
                    violations.append(
                        Violation(
                            "polarity_press_mismatch",
                            f"polarity.{parameter.value}",
                            f"pressed parameter {parameter.value} has no polarity annotation",
                        )
                    )
                elif parameter in annotated and parameter not in press:
                    violations.append(
                        Violation(
                            "polarity_press_mismatch",
                            f"polarity.{parameter.value}",
                            f"polarity given for unpressed parameter {parameter.value}",
                        )
                    )

    if violations:
        raise ValidationError(violations)
    assert scenario_id and setting and problem and action
    return Scenario(
        id=scenario_id,
        setting=setting,
        problem=problem,
        action=action,
        press=frozenset(press),
        polarity=polarity,
    )


def validate_feedback(record: Any) -> Feedback:
    """Build a :class:`Feedback` from a raw mapping.

    Raises :class:`ValidationError` listing every violation: unknown response,
    missing parameters, and out-of-range ratings.
    """
    if not isinstance(record, Mapping):
        raise ValidationError(
            [Violation("invalid_type", "", "feedback record must be an object")]
        )
    violations: list[Violation] = []

    agent = _text_field(record, "agent", violations)
    scenario_id = _text_field(record, "scenario", violations)

    response: Response | None = None
    raw_response = record.get("response")
    if raw_response is None:
        violations.append(
            Violation("missing_field", "response", "missing required field 'response'")
        )
    else:
        try:
            response = Response(raw_response)
        except ValueError:
            violations.append(
                Violation(
                    "unknown_response",
                    "response",
                    f"response must be 'yes' or 'no', got {raw_response!r}",
                )
            )

    justification: dict[Parameter, int] = {}
    raw_justification = record.get("justification")
    if not isinstance(raw_justification, Mapping):
        violations.append(
            Violation(
                "missing_field" if raw_justification is None else "invalid_type",
                "justification",
                "'justification' must be an object rating P1..P4",
            )
        )
    else:
        for key in raw_justification:
            try:
                Parameter(key)
            except ValueError:
                violations.append(
                    Violation(
                        "unknown_parameter",
                        f"justification.{key}",
                        f"unknown parameter {key!r}",
                    )
                )
        for parameter in PARAMETERS:
            if parameter.value not in raw_justification and parameter not in raw_justification:
                violations.append(
                    Violation(
                        "missing_parameter",
                        f"justification.{parameter.value}",
                        f"justification must rate {parameter.value}",
                    )
                )
                continue
            value = raw_justification.get(parameter.value, raw_justification.get(parameter))
            try:
                justification[parameter] = scale_value(value)
            except ValueError:
                violations.append(
                    Violation(
                        "value_out_of_range",
                        f"justification.{parameter.value}",
                        f"{parameter.value} must be an integer in "
                        f"{SCALE_MIN}..{SCALE_MAX}, got {value!r}",
                    )
                )

    if violations:
        raise ValidationError(violations)
    assert agent and scenario_id and response is not None
    return Feedback(
        agent=agent, scenario=scenario_id, response=response, justification=justification
    )
