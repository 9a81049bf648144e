"""Template-based surface realization of forecasts in two strategies.

WMO_BASED embeds the standardized likelihood phrase for the rain
probability; NATURAL imitates broadcast forecasters via a fixed rule
table over (sky condition, rain-likelihood group). The NATURAL table is
a reconstruction shipped as data (data/natural_rules.json) so the phrase
inventory can be swapped without code changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from .forecast import LocationForecast, Probability, SkyCondition, TemperatureDistribution
from .lexicon import band_for


class NlgStrategy(Enum):
    WMO_BASED = "WMO_BASED"
    NATURAL = "NATURAL"


@dataclass(frozen=True)
class ForecastText:
    rainfall_sentence: str
    temperature_sentence: str
    strategy: NlgStrategy

    def __post_init__(self):
        for s in (self.rainfall_sentence, self.temperature_sentence):
            if not s or s != s.rstrip() or not s[0].isupper():
                raise ValueError(f"malformed sentence: {s!r}")


SKY_PHRASES = {
    SkyCondition.SUNNY: "Sunny",
    SkyCondition.SUNNY_INTERVALS: "Sunny intervals",
    SkyCondition.CLOUDY: "Cloudy",
    SkyCondition.OVERCAST: "Overcast",
}


def _load_natural_rules():
    raw = resources.files("weathergame.data").joinpath("natural_rules.json").read_text()
    doc = json.loads(raw)
    group_of = {}
    for gi, ordinals in enumerate(doc["band_groups"]):
        for o in ordinals:
            group_of[o] = gi
    assert sorted(group_of) == list(range(9))
    rules = {SkyCondition(sky): tuple(phrases) for sky, phrases in doc["rules"].items()}
    assert set(rules) == set(SkyCondition)
    return group_of, rules


_NATURAL_GROUP_OF, _NATURAL_RULES = _load_natural_rules()

# Invented wording for temperature; isolated here (see module docstring).
_WMO_TEMP_TEMPLATE = "Temperatures around {q50}°C, very likely between {q10}°C and {q90}°C"


def realize_rainfall(sky: SkyCondition, p: Probability, strategy: NlgStrategy) -> str:
    band = band_for(p)
    sky_phrase = SKY_PHRASES[sky]
    if strategy is NlgStrategy.NATURAL:
        return _NATURAL_RULES[sky][_NATURAL_GROUP_OF[band.ordinal]]
    # Categorical forms at the extreme bands; the middle band gets a
    # symmetric wording instead of the literal table echo.
    if band.ordinal == 0:
        return f"{sky_phrase} with no rain expected"
    if band.ordinal == 8:
        return f"{sky_phrase} with rain expected"
    if band.ordinal == 4:
        return f"{sky_phrase} with rain or no rain equally likely"
    return f"{sky_phrase} with rain being {band.phrase}"


def realize_temperature(t: TemperatureDistribution, strategy: NlgStrategy) -> str:
    if strategy is NlgStrategy.WMO_BASED:
        return _WMO_TEMP_TEMPLATE.format(q10=t.q10, q50=t.q50, q90=t.q90)
    if t.q50 < 10:
        label = "Rather cold"
    elif t.q50 < 20:
        label = "Mild"
    else:
        label = "Warm"
    return f"{label} with highs of {t.q90}°C"


def realize_forecast(f: LocationForecast, strategy: NlgStrategy) -> ForecastText:
    return ForecastText(
        rainfall_sentence=realize_rainfall(f.sky, f.rain_prob, strategy),
        temperature_sentence=realize_temperature(f.temperature, strategy),
        strategy=strategy,
    )
