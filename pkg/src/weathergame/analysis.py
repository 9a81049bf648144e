"""Aggregate statistics, effect computation, significance tests, and
synthetic-agent simulation for validating the scoring design at desk scale.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from decimal import Decimal
from enum import Enum
from typing import Optional

from scipy import stats as scipy_stats

from . import engine
from .engine import (
    DecisionRecord,
    Demographics,
    PresentationCondition,
    default_numeracy_bank,
)
from .forecast import best_location
from .store import EventKind, EventStore, SessionEvent, read_jsonl

# Table 2 style pooling: the two graphics+text conditions form MULTIMODAL,
# the two text-only conditions form NLG_ONLY.
CONDITION_GROUPS = {
    PresentationCondition.GRAPHICS_ONLY: "GRAPHICS_ONLY",
    PresentationCondition.GRAPHICS_AND_NATURAL: "MULTIMODAL",
    PresentationCondition.GRAPHICS_AND_WMO: "MULTIMODAL",
    PresentationCondition.NATURAL_ONLY: "NLG_ONLY",
    PresentationCondition.WMO_ONLY: "NLG_ONLY",
}
GROUP_ORDER = ("GRAPHICS_ONLY", "MULTIMODAL", "NLG_ONLY")


@dataclass(frozen=True)
class ConditionAggregate:
    group: str
    n: int
    mean_gain: float
    mean_confidence_pct: float
    demographic: Optional[str] = None


@dataclass(frozen=True)
class CompletedSession:
    session_id: str
    condition: PresentationCondition
    balance: float
    mean_confidence: float
    demographics: dict


def completed_sessions(events) -> list[CompletedSession]:
    """Collapse an event stream to one row per completed session."""
    by_session: dict[str, list[SessionEvent]] = {}
    for e in events:
        by_session.setdefault(e.session_id, []).append(e)
    rows = []
    for sid in sorted(by_session):
        evs = sorted(by_session[sid], key=lambda e: e.event_id)
        condition = None
        demographics: dict = {}
        confidences = []
        balance = None
        for e in evs:
            if e.kind is EventKind.CONDITION_ASSIGNED:
                condition = PresentationCondition(e.body["condition"])
            elif e.kind is EventKind.DEMOGRAPHICS:
                demographics = e.body
            elif e.kind is EventKind.DECISION:
                confidences.append(e.body["confidence"])
            elif e.kind is EventKind.SUMMARY:
                balance = e.body["balance"]
        if condition is None or balance is None:
            continue  # incomplete session
        rows.append(
            CompletedSession(
                session_id=sid,
                condition=condition,
                balance=balance,
                mean_confidence=sum(confidences) / len(confidences),
                demographics=demographics,
            )
        )
    return rows


def aggregate(
    events,
    group_by: Optional[str] = None,
    pool_conditions: bool = True,
) -> list[ConditionAggregate]:
    """Per-condition-group means over completed sessions.

    With `group_by` (a demographics key, e.g. "gender") rows are split per
    demographic value, mirroring the per-group breakdown tables.
    """
    rows = completed_sessions(events)
    buckets: dict[tuple, list[CompletedSession]] = {}
    for r in rows:
        group = CONDITION_GROUPS[r.condition] if pool_conditions else r.condition.value
        demo = r.demographics.get(group_by) if group_by else None
        buckets.setdefault((demo, group), []).append(r)

    def group_rank(g):
        return GROUP_ORDER.index(g) if g in GROUP_ORDER else len(GROUP_ORDER)

    out = []
    for (demo, group) in sorted(buckets, key=lambda k: (str(k[0]), group_rank(k[1]), k[1])):
        members = buckets[(demo, group)]
        out.append(
            ConditionAggregate(
                group=group,
                n=len(members),
                mean_gain=sum(m.balance for m in members) / len(members),
                mean_confidence_pct=10.0
                * sum(m.mean_confidence for m in members)
                / len(members),
                demographic=demo,
            )
        )
    return out


def effect(baseline: float, treatment: float) -> float:
    """Signed mean difference, computed in exact decimal arithmetic."""
    return float(Decimal(repr(treatment)) - Decimal(repr(baseline)))


def percent_increase(baseline: float, treatment: float) -> float:
    """100 × (treatment − baseline) / baseline; baseline must be positive."""
    if baseline <= 0:
        raise ValueError(f"baseline must be positive, got {baseline}")
    return 100.0 * (treatment - baseline) / baseline


class SignificanceMethod(Enum):
    WELCH_T = "WELCH_T"
    RANK_SUM = "RANK_SUM"


@dataclass(frozen=True)
class SignificanceResult:
    p_value: float
    statistic: float
    method: SignificanceMethod
    degenerate: bool = False


def significance(sample_a, sample_b, method: SignificanceMethod) -> SignificanceResult:
    """Two-sided p-value comparing two score samples."""
    a, b = list(sample_a), list(sample_b)
    if len(a) < 2 or len(b) < 2:
        raise ValueError("each sample needs at least 2 observations")
    if len(set(a) | set(b)) == 1:
        return SignificanceResult(
            p_value=1.0, statistic=0.0, method=method, degenerate=True
        )
    if method is SignificanceMethod.WELCH_T:
        stat, p = scipy_stats.ttest_ind(a, b, equal_var=False)
    else:
        stat, p = scipy_stats.mannwhitneyu(a, b, alternative="two-sided")
    return SignificanceResult(p_value=float(p), statistic=float(stat), method=method)


# --- Synthetic agents --------------------------------------------------------


class PolicyTag(Enum):
    ORACLE = "ORACLE"
    RANDOM = "RANDOM"
    LITERACY = "LITERACY"


@dataclass(frozen=True)
class AgentPolicy:
    tag: PolicyTag
    skill: float = 1.0  # LITERACY mixing weight in [0, 1]

    def __post_init__(self):
        if not 0.0 <= self.skill <= 1.0:
            raise ValueError(f"skill must be within [0, 1], got {self.skill}")

    @classmethod
    def parse(cls, text: str) -> "AgentPolicy":
        text = text.strip().lower()
        if text == "oracle":
            return cls(PolicyTag.ORACLE)
        if text == "random":
            return cls(PolicyTag.RANDOM)
        if text.startswith("literacy:"):
            return cls(PolicyTag.LITERACY, skill=float(text.split(":", 1)[1]))
        raise ValueError(f"unknown policy: {text!r}")


def _oracle_decision(session: engine.Session, week: int) -> DecisionRecord:
    loc = best_location(session.scenario, week)
    p = session.scenario.forecast_for(week, loc).rain_prob
    if p.value <= 0.44:
        confidence = 10
    else:
        confidence = max(1, round(10 * (1 - p.value)))
    return DecisionRecord(week=week, chosen_location=loc, confidence=confidence)


def _random_decision(rng: random.Random, week: int) -> DecisionRecord:
    return DecisionRecord(
        week=week,
        chosen_location=rng.choice(["A", "B"]),
        confidence=rng.randint(1, 10),
    )


def _agent_numeracy_answers(rng: random.Random, bank, p_correct: float):
    answers = []
    item_id = bank.start
    while item_id is not None:
        item = bank.items[item_id]
        if rng.random() < p_correct:
            given = item.answer
            item_id = item.if_correct
        else:
            given = "-1"
            item_id = item.if_wrong
        answers.append((item.item_id, given))
    return answers


_GENDERS = ("female", "male")


def simulate(
    policy: AgentPolicy,
    n_sessions: int,
    condition: Optional[PresentationCondition],
    master_seed: int,
    store: Optional[EventStore] = None,
) -> EventStore:
    """Run full sessions headlessly through the engine and log them.

    `condition=None` cycles round-robin over all five conditions. Output is
    deterministic in master_seed: session seeds, agent randomness, and the
    logical clock all derive from it.
    """
    if n_sessions < 1:
        raise ValueError("n_sessions must be >= 1")
    if store is None:
        store = EventStore()
    bank = default_numeracy_bank()
    # Fixed logical clock so exports are byte-stable across runs.
    t0 = datetime(2024, 1, 1, tzinfo=timezone.utc)
    tick = [0]

    def clock() -> datetime:
        tick[0] += 1
        return t0 + timedelta(milliseconds=tick[0])

    for i in range(n_sessions):
        rng = random.Random(f"simulate:{master_seed}:{i}")
        seed = rng.getrandbits(64)
        cond = condition if condition is not None else engine.assign_condition(i)
        session_id = f"sim-{master_seed}-{i:06d}"
        session, events = engine.create_session(session_id, seed, cond, clock=clock)
        store.append_all(events)

        demo = Demographics(
            gender=rng.choice(_GENDERS),
            education_level=rng.choice(["secondary", "bachelor", "postgraduate"]),
            native_speaker=rng.random() < 0.5,
            risk_experience=rng.random() < 0.5,
            weather_model_familiarity=rng.random() < 0.5,
        )
        session, events = engine.advance(session, demo, bank=bank, clock=clock)
        store.append_all(events)

        if policy.tag is PolicyTag.ORACLE:
            p_correct = 1.0
        elif policy.tag is PolicyTag.RANDOM:
            p_correct = 0.5
        else:
            p_correct = policy.skill
        answers = _agent_numeracy_answers(rng, bank, p_correct)
        session, events = engine.advance(session, answers, bank=bank, clock=clock)
        store.append_all(events)

        for week in (1, 2, 3, 4):
            payload = engine.build_payload(session, week)
            session_event = SessionEvent(
                session_id=session_id,
                event_id=session.event_seq + 1,
                timestamp=engine.format_timestamp(clock()),
                kind=EventKind.PAYLOAD_SHOWN,
                body=payload.to_json_dict(),
            )
            store.append(session_event)
            session = replace(session, event_seq=session.event_seq + 1)
            if policy.tag is PolicyTag.ORACLE:
                decision = _oracle_decision(session, week)
            elif policy.tag is PolicyTag.RANDOM:
                decision = _random_decision(rng, week)
            else:
                if rng.random() < policy.skill:
                    decision = _oracle_decision(session, week)
                else:
                    decision = _random_decision(rng, week)
            session, events = engine.advance(session, decision, bank=bank, clock=clock)
            store.append_all(events)
    return store
