"""Domain model for probabilistic weather forecasts and the sales model.

All probabilities live on the hundredth grid (0.00 .. 1.00). Scenario
generation is a pure function of a 64-bit seed; the sales model defines
which of the two locations is the correct choice each week.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from enum import Enum


SALES_MAX = 30.0
MIN_SALES_GAP = 5.0

WEEKS = (1, 2, 3, 4)
LOCATIONS = ("A", "B")


@dataclass(frozen=True, order=True)
class Probability:
    """A probability quantized to hundredths (0.00, 0.01, ..., 1.00)."""

    hundredths: int

    def __post_init__(self):
        if not isinstance(self.hundredths, int):
            raise ValueError(f"hundredths must be an integer, got {self.hundredths!r}")
        if not 0 <= self.hundredths <= 100:
            raise ValueError(f"probability out of range: {self.hundredths}/100")

    @classmethod
    def quantize(cls, raw: float) -> "Probability":
        """Round-half-up an arbitrary value in [0, 1] onto the hundredth grid."""
        if not 0.0 <= raw <= 1.0:
            raise ValueError(f"probability must be within [0, 1], got {raw}")
        cents = int(
            (Decimal(repr(raw)) * 100).quantize(Decimal("1"), rounding=ROUND_HALF_UP)
        )
        return cls(cents)

    @classmethod
    def parse(cls, text: str) -> "Probability":
        """Parse the canonical two-decimal string form, e.g. '0.30'."""
        value = Decimal(text)
        cents = value * 100
        if cents != int(cents):
            raise ValueError(f"not on the hundredth grid: {text!r}")
        if not 0 <= int(cents) <= 100:
            raise ValueError(f"probability must be within [0, 1], got {text!r}")
        return cls(int(cents))

    @property
    def value(self) -> float:
        return self.hundredths / 100.0

    def __str__(self) -> str:
        return f"{self.hundredths // 100}.{self.hundredths % 100:02d}"


class SkyCondition(Enum):
    SUNNY = "SUNNY"
    SUNNY_INTERVALS = "SUNNY_INTERVALS"
    CLOUDY = "CLOUDY"
    OVERCAST = "OVERCAST"


@dataclass(frozen=True)
class TemperatureDistribution:
    """Three-quantile summary of the temperature forecast, in °C."""

    q10: int
    q50: int
    q90: int

    def __post_init__(self):
        if not (self.q10 <= self.q50 <= self.q90):
            raise ValueError(
                f"quantiles must be ordered: {self.q10}, {self.q50}, {self.q90}"
            )
        for q in (self.q10, self.q50, self.q90):
            if not -30 <= q <= 50:
                raise ValueError(f"temperature out of range [-30, 50]: {q}")


@dataclass(frozen=True)
class LocationForecast:
    location_id: str
    week: int
    rain_prob: Probability
    sky: SkyCondition
    temperature: TemperatureDistribution

    def __post_init__(self):
        if self.location_id not in LOCATIONS:
            raise ValueError(f"unknown location: {self.location_id!r}")
        if self.week not in WEEKS:
            raise ValueError(f"week must be in {WEEKS}, got {self.week}")


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    seed: int
    forecasts: tuple

    def __post_init__(self):
        keys = {(f.week, f.location_id) for f in self.forecasts}
        expected = {(w, loc) for w in WEEKS for loc in LOCATIONS}
        if keys != expected:
            raise ValueError("scenario must cover each (week, location) exactly once")
        if len(self.forecasts) != len(expected):
            raise ValueError("duplicate (week, location) forecasts")

    def forecast_for(self, week: int, location_id: str) -> LocationForecast:
        for f in self.forecasts:
            if f.week == week and f.location_id == location_id:
                return f
        raise KeyError((week, location_id))

    def to_json_dict(self) -> dict:
        """Canonical JSON form: fixed field order, probabilities as two-decimal strings."""
        return {
            "scenario_id": self.scenario_id,
            "seed": self.seed,
            "forecasts": [
                {
                    "week": f.week,
                    "location_id": f.location_id,
                    "rain_prob": str(f.rain_prob),
                    "sky": f.sky.value,
                    "temperature": {
                        "q10": f.temperature.q10,
                        "q50": f.temperature.q50,
                        "q90": f.temperature.q90,
                    },
                }
                for f in sorted(self.forecasts, key=lambda f: (f.week, f.location_id))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Scenario":
        forecasts = tuple(
            LocationForecast(
                location_id=f["location_id"],
                week=f["week"],
                rain_prob=Probability.parse(f["rain_prob"]),
                sky=SkyCondition(f["sky"]),
                temperature=TemperatureDistribution(**f["temperature"]),
            )
            for f in doc["forecasts"]
        )
        return cls(scenario_id=doc["scenario_id"], seed=doc["seed"], forecasts=forecasts)


def temp_factor(t: float) -> float:
    """Sales multiplier for the median temperature: 0 below 10°C, 1 above 30°C."""
    return min(1.0, max(0.0, (t - 10.0) / 20.0))


def expected_sales(f: LocationForecast) -> float:
    """Expected ice-cream sales in currency units for one location-week."""
    return SALES_MAX * (1.0 - f.rain_prob.value) * temp_factor(f.temperature.q50)


def best_location(scenario: Scenario, week: int) -> str:
    """Location with the higher expected sales; ties break to 'A'."""
    if week not in WEEKS:
        raise ValueError(f"week must be in {WEEKS}, got {week}")
    sales_a = expected_sales(scenario.forecast_for(week, "A"))
    sales_b = expected_sales(scenario.forecast_for(week, "B"))
    return "B" if sales_b > sales_a else "A"


def _draw_forecast(rng: random.Random, location_id: str, week: int) -> LocationForecast:
    p = Probability(rng.randint(0, 100))
    if p.value < 0.20:
        sky = rng.choice([SkyCondition.SUNNY, SkyCondition.SUNNY_INTERVALS])
    elif p.value > 0.80:
        sky = rng.choice([SkyCondition.OVERCAST, SkyCondition.CLOUDY])
    else:
        sky = rng.choice([SkyCondition.SUNNY_INTERVALS, SkyCondition.CLOUDY])
    q50 = rng.randint(5, 30)
    q10 = q50 - rng.randint(1, 6)
    q90 = q50 + rng.randint(1, 6)
    return LocationForecast(
        location_id=location_id,
        week=week,
        rain_prob=p,
        sky=sky,
        temperature=TemperatureDistribution(q10=q10, q50=q50, q90=q90),
    )


def generate_scenario(seed: int) -> Scenario:
    """Deterministically generate the 4-week, 2-location scenario for a seed.

    Per week the two locations are resampled until their expected sales differ
    by at least MIN_SALES_GAP, so a best choice always exists.
    """
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = random.Random(f"scenario:{seed}")
    forecasts = []
    for week in WEEKS:
        while True:
            fa = _draw_forecast(rng, "A", week)
            fb = _draw_forecast(rng, "B", week)
            if abs(expected_sales(fa) - expected_sales(fb)) >= MIN_SALES_GAP:
                break
        forecasts.extend([fa, fb])
    return Scenario(
        scenario_id=f"scn-{seed:016x}", seed=seed, forecasts=tuple(forecasts)
    )
