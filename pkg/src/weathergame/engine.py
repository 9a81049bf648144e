"""Session state machine for the Extended Weather Game.

Flow per session: demographics -> numeracy test -> four weekly rounds
(location choice + 1-10 confidence, rain sampled from the forecast
probability, confidence-weighted payoff) -> summary. All randomness
derives from the session seed so replaying the event log reproduces the
session exactly.

Note on scoring: the linear confidence-weighted payoff mirrors the
original game and is NOT a proper scoring rule (a player maximizes
expected payoff by reporting extreme confidence whenever they believe
rain is less likely than not). It is isolated in round_payoff for
experimenters who prefer a quadratic rule.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional

from .forecast import (
    Probability,
    Scenario,
    WEEKS,
    best_location,
    generate_scenario,
)
from .realizer import ForecastText, NlgStrategy, realize_forecast
from .store import EventKind, SessionEvent, format_timestamp

STAKE = 30

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


class PhaseError(Exception):
    """Input does not match the session's current phase."""


class IdempotencyError(PhaseError):
    """Duplicate submission for an already-completed round."""


class ProtocolError(Exception):
    """Numeracy answers deviate from the bank's adaptive path."""


class PresentationCondition(Enum):
    GRAPHICS_ONLY = "GRAPHICS_ONLY"
    GRAPHICS_AND_NATURAL = "GRAPHICS_AND_NATURAL"
    GRAPHICS_AND_WMO = "GRAPHICS_AND_WMO"
    NATURAL_ONLY = "NATURAL_ONLY"
    WMO_ONLY = "WMO_ONLY"

    @property
    def has_graphics(self) -> bool:
        return self in (
            PresentationCondition.GRAPHICS_ONLY,
            PresentationCondition.GRAPHICS_AND_NATURAL,
            PresentationCondition.GRAPHICS_AND_WMO,
        )

    @property
    def text_strategy(self) -> Optional[NlgStrategy]:
        if self in (
            PresentationCondition.GRAPHICS_AND_NATURAL,
            PresentationCondition.NATURAL_ONLY,
        ):
            return NlgStrategy.NATURAL
        if self in (
            PresentationCondition.GRAPHICS_AND_WMO,
            PresentationCondition.WMO_ONLY,
        ):
            return NlgStrategy.WMO_BASED
        return None


class Phase(Enum):
    DEMOGRAPHICS = "DEMOGRAPHICS"
    NUMERACY = "NUMERACY"
    ROUND_1 = "ROUND_1"
    ROUND_2 = "ROUND_2"
    ROUND_3 = "ROUND_3"
    ROUND_4 = "ROUND_4"
    SUMMARY = "SUMMARY"

    @property
    def week(self) -> Optional[int]:
        if self.name.startswith("ROUND_"):
            return int(self.name[-1])
        return None


def assign_condition(session_counter: int) -> PresentationCondition:
    """Deterministic round-robin keeps conditions balanced to within 1."""
    if session_counter < 0:
        raise ValueError("session counter must be non-negative")
    return list(PresentationCondition)[session_counter % 5]


@dataclass(frozen=True)
class Demographics:
    gender: Optional[str] = None
    education_level: Optional[str] = None
    native_speaker: Optional[bool] = None
    risk_experience: Optional[bool] = None
    weather_model_familiarity: Optional[bool] = None


@dataclass(frozen=True)
class DecisionRecord:
    week: int
    chosen_location: str
    confidence: int

    def __post_init__(self):
        if self.week not in WEEKS:
            raise ValueError(f"week must be in {WEEKS}, got {self.week}")
        if self.chosen_location not in ("A", "B"):
            raise ValueError(f"unknown location: {self.chosen_location!r}")
        if not (isinstance(self.confidence, int) and 1 <= self.confidence <= 10):
            raise ValueError(f"confidence must be an integer in 1..10, got {self.confidence!r}")


@dataclass(frozen=True)
class RoundOutcome:
    rain_occurred: bool
    correct_location: str
    payoff: float


@dataclass(frozen=True)
class NumeracyResult:
    score: int
    answers: tuple  # of (question_id, given_answer, correct)
    literate: bool


# --- Numeracy test (adaptive, Berlin-style 4-item format) -------------------


@dataclass(frozen=True)
class NumeracyItem:
    item_id: str
    prompt: str
    answer: str
    if_correct: Optional[str]
    if_wrong: Optional[str]


@dataclass(frozen=True)
class NumeracyBank:
    items: dict
    start: str
    literacy_threshold: int = 3


def default_numeracy_bank() -> NumeracyBank:
    raw = resources.files("weathergame.data").joinpath("numeracy_bank.json").read_text()
    doc = json.loads(raw)
    items = {rec["item_id"]: NumeracyItem(**rec) for rec in doc["items"]}
    return NumeracyBank(
        items=items, start=doc["start"], literacy_threshold=doc["literacy_threshold"]
    )


def _answers_match(given: str, expected: str) -> bool:
    try:
        return abs(float(given) - float(expected)) < 1e-9
    except (TypeError, ValueError):
        return False


def numeracy_score(answers, bank: NumeracyBank) -> NumeracyResult:
    """Score an ordered answer list along the bank's adaptive path.

    Each answer is a (question_id, given_answer) pair; the question at each
    step is determined by the correctness of the previous one. Answers off
    the path (or an incomplete path) raise ProtocolError.
    """
    expected = bank.start
    graded = []
    for question_id, given in answers:
        if expected is None or question_id != expected:
            raise ProtocolError(
                f"answer for {question_id!r} is off the adaptive path "
                f"(expected {expected!r})"
            )
        item = bank.items[question_id]
        correct = _answers_match(given, item.answer)
        graded.append((question_id, given, correct))
        expected = item.if_correct if correct else item.if_wrong
    if expected is not None:
        raise ProtocolError(f"incomplete answer path: next item {expected!r} unanswered")
    score = sum(1 for _, _, ok in graded if ok)
    return NumeracyResult(
        score=score, answers=tuple(graded), literate=score >= bank.literacy_threshold
    )


# --- Presentation payloads ---------------------------------------------------


@dataclass(frozen=True)
class LocationPresentation:
    location_id: str
    graphics: Optional[dict]  # rain_chance_percent + temperature quantiles
    text: Optional[ForecastText]


@dataclass(frozen=True)
class PresentationPayload:
    week: int
    condition: PresentationCondition
    locations: tuple

    def to_json_dict(self) -> dict:
        out = {"week": self.week, "condition": self.condition.value, "locations": []}
        for lp in self.locations:
            entry = {"location_id": lp.location_id}
            if lp.graphics is not None:
                entry["graphics"] = lp.graphics
            if lp.text is not None:
                entry["text"] = {
                    "strategy": lp.text.strategy.value,
                    "rainfall": lp.text.rainfall_sentence,
                    "temperature": lp.text.temperature_sentence,
                }
            out["locations"].append(entry)
        return out


# --- Session -----------------------------------------------------------------


@dataclass(frozen=True)
class Session:
    session_id: str
    seed: int
    condition: PresentationCondition
    scenario: Scenario
    phase: Phase = Phase.DEMOGRAPHICS
    demographics: Optional[Demographics] = None
    numeracy: Optional[NumeracyResult] = None
    decisions: tuple = ()
    outcomes: tuple = ()
    balance: float = 0.0
    event_seq: int = 0


def _event(session: Session, seq: int, kind: EventKind, body: dict, clock: Clock) -> SessionEvent:
    return SessionEvent(
        session_id=session.session_id,
        event_id=seq,
        timestamp=format_timestamp(clock()),
        kind=kind,
        body=body,
    )


def create_session(
    session_id: str,
    seed: int,
    condition: PresentationCondition,
    clock: Clock = utc_now,
):
    """New session in the DEMOGRAPHICS phase, with its scenario generated."""
    scenario = generate_scenario(seed)
    session = Session(
        session_id=session_id,
        seed=seed,
        condition=condition,
        scenario=scenario,
        event_seq=2,
    )
    events = [
        _event(
            session,
            1,
            EventKind.SESSION_CREATED,
            {"session_id": session_id, "seed": seed, "scenario": scenario.to_json_dict()},
            clock,
        ),
        _event(session, 2, EventKind.CONDITION_ASSIGNED, {"condition": condition.value}, clock),
    ]
    return session, events


def sample_rain(p: Probability, seed: int, week: int) -> bool:
    """Bernoulli(p) draw, deterministic in (session seed, week)."""
    rng = random.Random(f"rain:{seed}:{week}")
    return rng.random() < p.value


def round_payoff(d: DecisionRecord, rain_at_chosen: bool) -> float:
    """Confidence-weighted payoff: ±STAKE × confidence/10, negative on rain."""
    base = STAKE * d.confidence // 10  # exact: STAKE×c divisible by 10
    return float(-base if rain_at_chosen else base)


def expected_round_payoff(p: Probability, confidence: int) -> Fraction:
    """Analytic expectation STAKE × (c/10) × (1 − 2p), in exact arithmetic."""
    return Fraction(STAKE) * Fraction(confidence, 10) * (1 - 2 * Fraction(p.hundredths, 100))


def build_payload(session: Session, week: int) -> PresentationPayload:
    """Assemble what the player sees for a round, per the condition matrix.

    Text-only conditions carry no numeric probability fields at all.
    """
    if week not in WEEKS:
        raise ValueError(f"week must be in {WEEKS}, got {week}")
    if session.phase.week != week:
        raise PhaseError(f"session is in phase {session.phase.value}, not ROUND_{week}")
    strategy = session.condition.text_strategy
    locations = []
    for loc in ("A", "B"):
        f = session.scenario.forecast_for(week, loc)
        graphics = None
        if session.condition.has_graphics:
            graphics = {
                "rain_chance_percent": f.rain_prob.hundredths,
                "temperature": {
                    "q10": f.temperature.q10,
                    "q50": f.temperature.q50,
                    "q90": f.temperature.q90,
                },
            }
        text = realize_forecast(f, strategy) if strategy is not None else None
        locations.append(LocationPresentation(location_id=loc, graphics=graphics, text=text))
    return PresentationPayload(week=week, condition=session.condition, locations=tuple(locations))


def advance(
    session: Session,
    payload,
    bank: Optional[NumeracyBank] = None,
    clock: Clock = utc_now,
):
    """Apply phase-appropriate input and return (successor session, new events)."""
    seq = session.event_seq

    if session.phase is Phase.DEMOGRAPHICS:
        if not isinstance(payload, Demographics):
            raise PhaseError("expected demographics")
        event = _event(session, seq + 1, EventKind.DEMOGRAPHICS, asdict(payload), clock)
        new = replace(session, demographics=payload, phase=Phase.NUMERACY, event_seq=seq + 1)
        return new, [event]

    if session.phase is Phase.NUMERACY:
        if not isinstance(payload, (list, tuple)):
            raise PhaseError("expected a numeracy answer list")
        result = numeracy_score(payload, bank or default_numeracy_bank())
        events = []
        for question_id, given, correct in result.answers:
            seq += 1
            events.append(
                _event(
                    session,
                    seq,
                    EventKind.NUMERACY_ANSWER,
                    {"question_id": question_id, "answer": str(given), "correct": correct},
                    clock,
                )
            )
        new = replace(session, numeracy=result, phase=Phase.ROUND_1, event_seq=seq)
        return new, events

    if session.phase.week is not None:
        if not isinstance(payload, DecisionRecord):
            raise PhaseError("expected a decision")
        week = session.phase.week
        if payload.week < week:
            raise IdempotencyError(f"round {payload.week} already completed")
        if payload.week != week:
            raise PhaseError(f"session is in ROUND_{week}, got decision for week {payload.week}")
        forecast = session.scenario.forecast_for(week, payload.chosen_location)
        rain = sample_rain(forecast.rain_prob, session.seed, week)
        payoff = round_payoff(payload, rain)
        outcome = RoundOutcome(
            rain_occurred=rain,
            correct_location=best_location(session.scenario, week),
            payoff=payoff,
        )
        balance = session.balance + payoff
        events = [
            _event(
                session,
                seq + 1,
                EventKind.DECISION,
                {
                    "week": week,
                    "chosen_location": payload.chosen_location,
                    "confidence": payload.confidence,
                },
                clock,
            ),
            _event(
                session,
                seq + 2,
                EventKind.OUTCOME,
                {
                    "week": week,
                    "rain_occurred": rain,
                    "correct_location": outcome.correct_location,
                    "payoff": payoff,
                    "balance": balance,
                },
                clock,
            ),
        ]
        seq += 2
        next_phase = Phase.SUMMARY if week == 4 else Phase[f"ROUND_{week + 1}"]
        new = replace(
            session,
            decisions=session.decisions + (payload,),
            outcomes=session.outcomes + (outcome,),
            balance=balance,
            phase=next_phase,
            event_seq=seq,
        )
        if next_phase is Phase.SUMMARY:
            seq += 1
            events.append(
                _event(
                    new,
                    seq,
                    EventKind.SUMMARY,
                    {
                        "balance": balance,
                        "rounds": len(new.outcomes),
                        "numeracy_score": new.numeracy.score if new.numeracy else None,
                        "mean_confidence": sum(d.confidence for d in new.decisions)
                        / len(new.decisions),
                    },
                    clock,
                )
            )
            new = replace(new, event_seq=seq)
        return new, events

    raise PhaseError("session is complete")


def summary(session: Session) -> dict:
    if session.phase is not Phase.SUMMARY:
        raise PhaseError(f"session is in phase {session.phase.value}, not SUMMARY")
    return {
        "session_id": session.session_id,
        "condition": session.condition.value,
        "balance": session.balance,
        "payoffs": [o.payoff for o in session.outcomes],
        "numeracy_score": session.numeracy.score if session.numeracy else None,
        "numeracy_literate": session.numeracy.literate if session.numeracy else None,
    }


def replay_session(events, bank: Optional[NumeracyBank] = None) -> Session:
    """Reconstruct a session by replaying its event log through advance.

    Recorded OUTCOME/SUMMARY events are checked against the recomputed
    state; a mismatch means the log or the engine changed underneath.
    """
    events = list(events)
    if not events or events[0].kind is not EventKind.SESSION_CREATED:
        raise ValueError("event log must start with SESSION_CREATED")
    created = events[0].body
    condition = None
    for e in events:
        if e.kind is EventKind.CONDITION_ASSIGNED:
            condition = PresentationCondition(e.body["condition"])
            break
    if condition is None:
        raise ValueError("event log lacks CONDITION_ASSIGNED")

    session = Session(
        session_id=created["session_id"],
        seed=created["seed"],
        condition=condition,
        scenario=Scenario.from_json_dict(created["scenario"]),
    )
    numeracy_buffer = []
    for e in events:
        if e.kind is EventKind.DEMOGRAPHICS:
            session, _ = advance(session, Demographics(**e.body), bank=bank)
        elif e.kind is EventKind.NUMERACY_ANSWER:
            numeracy_buffer.append((e.body["question_id"], e.body["answer"]))
        elif e.kind is EventKind.DECISION:
            if numeracy_buffer:
                session, _ = advance(session, numeracy_buffer, bank=bank)
                numeracy_buffer = []
            record = DecisionRecord(
                week=e.body["week"],
                chosen_location=e.body["chosen_location"],
                confidence=e.body["confidence"],
            )
            session, _ = advance(session, record, bank=bank)
        elif e.kind is EventKind.OUTCOME:
            recomputed = session.outcomes[e.body["week"] - 1]
            if (
                recomputed.rain_occurred != e.body["rain_occurred"]
                or recomputed.payoff != e.body["payoff"]
            ):
                raise ValueError(f"replay mismatch at week {e.body['week']}")
        elif e.kind is EventKind.SUMMARY:
            if session.balance != e.body["balance"]:
                raise ValueError("replay balance mismatch")
    if numeracy_buffer:
        session, _ = advance(session, numeracy_buffer, bank=bank)
    return replace(session, event_seq=events[-1].event_id)
