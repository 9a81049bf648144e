"""Band lookup tests, checked against an independently transcribed if-chain."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weathergame.forecast import Probability
from weathergame.lexicon import BANDS, band_for, interval_for, quantize

GRID = [Probability(h) for h in range(101)]


def wmo_phrase_oracle(p: Fraction) -> str:
    # Brute-force transcription of the published guidance, kept independent
    # of the data file on purpose.
    if p > Fraction(99, 100):
        return "extremely likely"
    if Fraction(90, 100) <= p <= Fraction(99, 100):
        return "very likely"
    if Fraction(70, 100) <= p <= Fraction(89, 100):
        return "likely"
    if Fraction(55, 100) <= p <= Fraction(69, 100):
        return "probable - more likely than not"
    if Fraction(45, 100) <= p <= Fraction(54, 100):
        return "equally likely as not"
    if Fraction(30, 100) <= p <= Fraction(44, 100):
        return "possible - less likely than not"
    if Fraction(10, 100) <= p <= Fraction(29, 100):
        return "unlikely"
    if Fraction(1, 100) <= p <= Fraction(9, 100):
        return "very unlikely"
    assert p < Fraction(1, 100)
    return "extremely unlikely"


def test_matches_oracle_on_all_grid_points():
    for p in GRID:
        assert band_for(p).phrase == wmo_phrase_oracle(Fraction(p.hundredths, 100))


def test_examples():
    assert band_for(Probability(30)).phrase == "possible - less likely than not"
    assert band_for(Probability(50)).phrase == "equally likely as not"
    assert band_for(Probability(0)).phrase == "extremely unlikely"
    assert band_for(Probability(100)).phrase == "extremely likely"


def test_band_sizes_sum_to_grid():
    sizes = [b.upper.hundredths - b.lower.hundredths + 1 for b in BANDS]
    assert sum(sizes) == 101


def test_ordinal_order_matches_lower_bounds():
    lowers = [b.lower for b in BANDS]
    assert lowers == sorted(lowers)
    assert [b.ordinal for b in BANDS] == list(range(9))


@given(st.integers(min_value=0, max_value=100), st.integers(min_value=0, max_value=100))
def test_monotone_in_probability(h1, h2):
    if h1 < h2:
        assert band_for(Probability(h1)).ordinal <= band_for(Probability(h2)).ordinal


@given(st.integers(min_value=0, max_value=100))
def test_round_trip(h):
    p = Probability(h)
    lo, hi = interval_for(band_for(p).phrase)
    assert lo <= p <= hi


def test_interval_for_examples():
    assert interval_for("unlikely") == (Probability(10), Probability(29))
    assert interval_for("extremely likely") == (Probability(100), Probability(100))
    with pytest.raises(LookupError):
        interval_for("rather likely")


def test_quantize_rounds_half_up():
    assert quantize(0.095) == Probability(10)
    assert band_for(quantize(0.095)).phrase == "unlikely"
    assert quantize(0.5) == Probability(50)
    assert quantize(0.125) == Probability(13)  # half-up, not banker's
    with pytest.raises(ValueError):
        quantize(1.0000001)
    with pytest.raises(ValueError):
        quantize(-0.01)


@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_quantize_total_on_unit_interval(raw):
    p = quantize(raw)
    assert 0 <= p.hundredths <= 100
    assert abs(p.value - raw) <= 0.005 + 1e-12
