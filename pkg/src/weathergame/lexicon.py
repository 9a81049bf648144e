"""WMO likelihood-to-phrase mapping as a total, invertible band lookup.

The nine bands are loaded from data/wmo_bands.json, the single canonical
definition shared with the tests. Sub-hundredth gaps in the published
guidance are closed by quantizing all probabilities to hundredths first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .forecast import Probability


@dataclass(frozen=True)
class LikelihoodBand:
    ordinal: int
    lower: Probability
    upper: Probability
    phrase: str


def _load_bands() -> tuple:
    raw = resources.files("weathergame.data").joinpath("wmo_bands.json").read_text()
    bands = tuple(
        LikelihoodBand(
            ordinal=rec["ordinal"],
            lower=Probability.parse(rec["lower"]),
            upper=Probability.parse(rec["upper"]),
            phrase=rec["phrase"],
        )
        for rec in json.loads(raw)
    )
    # Sanity: bands partition the hundredth grid in ordinal order.
    assert [b.ordinal for b in bands] == list(range(9))
    cursor = 0
    for b in bands:
        assert b.lower.hundredths == cursor, f"gap before band {b.ordinal}"
        assert b.upper.hundredths >= b.lower.hundredths
        cursor = b.upper.hundredths + 1
    assert cursor == 101
    return bands


BANDS: tuple = _load_bands()

_BY_HUNDREDTH = {h: b for b in BANDS for h in range(b.lower.hundredths, b.upper.hundredths + 1)}
_BY_PHRASE = {b.phrase: b for b in BANDS}


def band_for(p: Probability) -> LikelihoodBand:
    """The unique band containing a grid probability."""
    return _BY_HUNDREDTH[p.hundredths]


def quantize(raw: float) -> Probability:
    """Round-half-up onto the hundredth grid; raises ValueError outside [0, 1]."""
    return Probability.quantize(raw)


def interval_for(phrase: str):
    """Closed [lower, upper] grid interval for one of the nine phrases."""
    try:
        band = _BY_PHRASE[phrase]
    except KeyError:
        raise LookupError(f"unknown likelihood phrase: {phrase!r}") from None
    return band.lower, band.upper
