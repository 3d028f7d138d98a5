"""Builders shared across test modules.

Sound feedback is rigged from the oracle's EXPECTED_BAND table, not from the
package's own expected_band, so round-trip tests stay independent.
"""

import random

from truth_oracle import EXPECTED_BAND

from dispositions.model import (
    PARAMETERS,
    Feedback,
    Parameter,
    Polarity,
    Response,
    Scenario,
)


def ratings(**overrides: int) -> dict[Parameter, int]:
    """A total justification, defaulting every unmentioned parameter to 1."""
    values = {parameter: 1 for parameter in PARAMETERS}
    for name, value in overrides.items():
        values[Parameter(name)] = value
    return values


def scenario_for(
    press_polarity: dict[str, str], scenario_id: str = "made-up"
) -> Scenario:
    """A scenario with the given {parameter: polarity} annotations."""
    return Scenario(
        id=scenario_id,
        setting=f"Setting of {scenario_id}.",
        problem=f"Problem of {scenario_id}.",
        action=f"carry out {scenario_id}",
        press=frozenset(Parameter(name) for name in press_polarity),
        polarity={
            Parameter(name): Polarity(value)
            for name, value in press_polarity.items()
        },
    )


def random_scenario(
    rng: random.Random, scenario_id: str, min_press: int = 0
) -> Scenario:
    pressed = rng.sample(PARAMETERS, rng.randint(min_press, len(PARAMETERS)))
    return Scenario(
        id=scenario_id,
        setting=f"Setting of {scenario_id}.",
        problem=f"Problem of {scenario_id}.",
        action=f"carry out {scenario_id}",
        press=frozenset(pressed),
        polarity={
            parameter: rng.choice((Polarity.ALIGNED, Polarity.OPPOSED))
            for parameter in pressed
        },
    )


def random_feedback(rng: random.Random, agent: str, scenario: Scenario) -> Feedback:
    return Feedback(
        agent=agent,
        scenario=scenario.id,
        response=rng.choice((Response.YES, Response.NO)),
        justification={parameter: rng.randint(1, 5) for parameter in PARAMETERS},
    )


def sound_feedback(rng: random.Random, agent: str, scenario: Scenario) -> Feedback:
    """Feedback rigged to be sound for the scenario under default bands."""
    response = rng.choice((Response.YES, Response.NO))
    justification = {parameter: rng.randint(1, 5) for parameter in PARAMETERS}
    for parameter in scenario.press:
        expected = EXPECTED_BAND[
            (response.value, scenario.polarity[parameter].value)
        ]
        justification[parameter] = (
            rng.choice((4, 5)) if expected == "high" else rng.choice((1, 2))
        )
    return Feedback(
        agent=agent,
        scenario=scenario.id,
        response=response,
        justification=justification,
    )
