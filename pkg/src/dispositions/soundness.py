"""Consistency oracle: is a justification sound with respect to the response?

Ratings are classified into low/neutral/high bands.  For every pressed
parameter the band that would be consistent with the given response follows
from the scenario's polarity annotation: answering yes to an aligned action
expresses a high rating, answering yes to an opposed action expresses a low
one, and answering no flips either expectation.  Per-parameter verdicts are
then folded into an overall verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping

from .model import (
    PARAMETERS,
    Parameter,
    Polarity,
    Response,
    Scenario,
    scale_value,
)


class ValueBand(str, Enum):
    LOW = "low"
    NEUTRAL = "neutral"
    HIGH = "high"


class NeutralPolicy(str, Enum):
    """What a neutral rating on a pressed parameter means.

    INDETERMINATE withholds judgement (nothing is elicited, the feedback is
    retained); TREAT_AS_UNSOUND counts it as an inconsistency.
    """

    INDETERMINATE = "indeterminate"
    TREAT_AS_UNSOUND = "treat_as_unsound"


class Combinator(str, Enum):
    """How per-parameter verdicts combine when more than one parameter is
    pressed.  ALL is a conjunction and the default; ANY accepts the feedback
    as soon as one pressed parameter is consistent."""

    ALL = "all"
    ANY = "any"


class Verdict(str, Enum):
    SOUND = "sound"
    UNSOUND = "unsound"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SoundnessConfig:
    """Knobs of the oracle.  Defaults give bands low={1,2}, neutral={3},
    high={4,5}, withhold judgement on neutral ratings, and require every
    pressed parameter to be consistent."""

    low_max: int = 2
    high_min: int = 4
    neutral_policy: NeutralPolicy = NeutralPolicy.INDETERMINATE
    combinator: Combinator = Combinator.ALL

    def __post_init__(self) -> None:
        scale_value(self.low_max)
        scale_value(self.high_min)
        if self.low_max >= self.high_min:
            raise ValueError(
                f"low_max ({self.low_max}) must be below high_min ({self.high_min})"
            )

    def to_json(self) -> dict[str, Any]:
        return {
            "low_max": self.low_max,
            "high_min": self.high_min,
            "neutral_policy": self.neutral_policy.value,
            "combinator": self.combinator.value,
        }

    @classmethod
    def from_json(cls, doc: Mapping[str, Any]) -> "SoundnessConfig":
        defaults = cls()
        return cls(
            low_max=doc.get("low_max", defaults.low_max),
            high_min=doc.get("high_min", defaults.high_min),
            neutral_policy=NeutralPolicy(
                doc.get("neutral_policy", defaults.neutral_policy.value)
            ),
            combinator=Combinator(doc.get("combinator", defaults.combinator.value)),
        )


DEFAULT_CONFIG = SoundnessConfig()


@dataclass(frozen=True)
class ParameterVerdict:
    """Judgement for a single pressed parameter."""

    observed: ValueBand
    expected: ValueBand
    verdict: Verdict


@dataclass(frozen=True)
class SoundnessVerdict:
    """Overall judgement plus the per-parameter breakdown it was folded from.

    ``per_parameter`` has exactly the pressed parameters as keys.
    """

    scenario: str
    overall: Verdict
    per_parameter: Mapping[Parameter, ParameterVerdict] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_parameter", dict(self.per_parameter))


def band_of(value: int, config: SoundnessConfig = DEFAULT_CONFIG) -> ValueBand:
    """Classify a 1..5 rating into its band."""
    scale_value(value)
    if value <= config.low_max:
        return ValueBand.LOW
    if value >= config.high_min:
        return ValueBand.HIGH
    return ValueBand.NEUTRAL


def expected_band(response: Response, polarity: Polarity) -> ValueBand:
    """The band a pressed parameter's rating must fall in to be consistent
    with the response.  Never neutral."""
    acted = response is Response.YES
    if polarity is Polarity.ALIGNED:
        return ValueBand.HIGH if acted else ValueBand.LOW
    return ValueBand.LOW if acted else ValueBand.HIGH


def _combine(verdicts: list[Verdict], combinator: Combinator) -> Verdict:
    # An empty press set is vacuously consistent under either combinator.
    if not verdicts:
        return Verdict.SOUND
    if combinator is Combinator.ALL:
        if Verdict.UNSOUND in verdicts:
            return Verdict.UNSOUND
        if Verdict.INDETERMINATE in verdicts:
            return Verdict.INDETERMINATE
        return Verdict.SOUND
    if Verdict.SOUND in verdicts:
        return Verdict.SOUND
    if Verdict.INDETERMINATE in verdicts:
        return Verdict.INDETERMINATE
    return Verdict.UNSOUND


def sound(
    scenario: Scenario,
    response: Response,
    justification: Mapping[Parameter, int],
    config: SoundnessConfig = DEFAULT_CONFIG,
) -> SoundnessVerdict:
    """Judge whether a justification is consistent with the response given.

    Only pressed parameters are inspected.  ``justification`` must rate every
    pressed parameter (a total justification always does).  The result is
    deterministic in its inputs.
    """
    per_parameter: dict[Parameter, ParameterVerdict] = {}
    for parameter in PARAMETERS:
        if parameter not in scenario.press:
            continue
        observed = band_of(justification[parameter], config)
        expected = expected_band(response, scenario.polarity[parameter])
        if observed is expected:
            verdict = Verdict.SOUND
        elif observed is ValueBand.NEUTRAL:
            verdict = (
                Verdict.INDETERMINATE
                if config.neutral_policy is NeutralPolicy.INDETERMINATE
                else Verdict.UNSOUND
            )
        else:
            verdict = Verdict.UNSOUND
        per_parameter[parameter] = ParameterVerdict(observed, expected, verdict)

    overall = _combine([pv.verdict for pv in per_parameter.values()], config.combinator)
    return SoundnessVerdict(
        scenario=scenario.id, overall=overall, per_parameter=per_parameter
    )
