from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weathergame import engine
from weathergame.engine import (
    DecisionRecord,
    Demographics,
    IdempotencyError,
    Phase,
    PhaseError,
    PresentationCondition,
    ProtocolError,
    advance,
    assign_condition,
    build_payload,
    create_session,
    default_numeracy_bank,
    expected_round_payoff,
    numeracy_score,
    round_payoff,
    sample_rain,
)
from weathergame.forecast import Probability

ALL_CORRECT = [("q1", "100"), ("q2_hard", "50"), ("q3_hard", "30"), ("q4_hard", "5")]
ALL_WRONG = [("q1", "-1"), ("q2_easy", "-1"), ("q3_easy", "-1"), ("q4_easy", "-1")]


def fresh_session(seed=42, condition=PresentationCondition.GRAPHICS_AND_WMO):
    session, _ = create_session("s-test", seed, condition)
    return session


def session_at_round_1(**kwargs):
    session = fresh_session(**kwargs)
    session, _ = advance(session, Demographics(gender="female"))
    session, _ = advance(session, ALL_CORRECT)
    return session


class TestAssignCondition:
    def test_mod_5_cycle(self):
        assert assign_condition(0) is PresentationCondition.GRAPHICS_ONLY
        assert assign_condition(5) is PresentationCondition.GRAPHICS_ONLY
        assert assign_condition(3) is PresentationCondition.NATURAL_ONLY

    def test_balanced_over_100(self):
        counts = {}
        for i in range(100):
            c = assign_condition(i)
            counts[c] = counts.get(c, 0) + 1
        assert all(n == 20 for n in counts.values())

    def test_negative_counter_rejected(self):
        with pytest.raises(ValueError):
            assign_condition(-1)


class TestPayoff:
    def test_examples(self):
        assert round_payoff(DecisionRecord(1, "A", 10), rain_at_chosen=False) == 30.0
        assert round_payoff(DecisionRecord(1, "A", 10), rain_at_chosen=True) == -30.0
        assert round_payoff(DecisionRecord(1, "A", 1), rain_at_chosen=False) == 3.0

    @given(st.integers(min_value=1, max_value=10))
    def test_antisymmetry_and_bounds(self, c):
        d = DecisionRecord(1, "A", c)
        assert round_payoff(d, True) == -round_payoff(d, False)
        assert -30.0 <= round_payoff(d, True) <= 30.0

    def test_monotone_in_confidence(self):
        payoffs = [round_payoff(DecisionRecord(1, "A", c), False) for c in range(1, 11)]
        assert payoffs == sorted(payoffs) and len(set(payoffs)) == 10
        losses = [round_payoff(DecisionRecord(1, "A", c), True) for c in range(1, 11)]
        assert losses == sorted(losses, reverse=True)

    def test_expected_payoff_identity_exact(self):
        for h in range(101):
            p = Fraction(h, 100)
            for c in range(1, 11):
                d = DecisionRecord(1, "A", c)
                brute = p * Fraction(round_payoff(d, True)) + (1 - p) * Fraction(
                    round_payoff(d, False)
                )
                assert expected_round_payoff(Probability(h), c) == brute

    def test_confidence_validation(self):
        with pytest.raises(ValueError):
            DecisionRecord(1, "A", 0)
        with pytest.raises(ValueError):
            DecisionRecord(1, "A", 11)


class TestSampleRain:
    def test_extremes(self):
        for seed in range(50):
            assert sample_rain(Probability(0), seed, 1) is False
            assert sample_rain(Probability(100), seed, 1) is True

    def test_deterministic_per_seed_week(self):
        assert sample_rain(Probability(30), 1234, 2) == sample_rain(Probability(30), 1234, 2)

    def test_calibration_at_p30(self):
        draws = sum(sample_rain(Probability(30), 1234 + i, 1) for i in range(10_000))
        assert 0.28 <= draws / 10_000 <= 0.32


class TestNumeracy:
    def test_all_correct(self):
        result = numeracy_score(ALL_CORRECT, default_numeracy_bank())
        assert result.score == 4 and result.literate

    def test_all_wrong_walks_easy_path(self):
        result = numeracy_score(ALL_WRONG, default_numeracy_bank())
        assert result.score <= 1 and not result.literate

    def test_off_path_answer(self):
        with pytest.raises(ProtocolError):
            numeracy_score([("q1", "100"), ("q2_easy", "25")], default_numeracy_bank())

    def test_incomplete_path(self):
        with pytest.raises(ProtocolError):
            numeracy_score(ALL_CORRECT[:2], default_numeracy_bank())

    def test_literacy_threshold(self):
        # Miss only the last item: 3 correct is still literate.
        answers = ALL_CORRECT[:3] + [("q4_hard", "0")]
        result = numeracy_score(answers, default_numeracy_bank())
        assert result.score == 3 and result.literate


class TestPayloadMatrix:
    @pytest.mark.parametrize("condition", list(PresentationCondition))
    def test_condition_matrix(self, condition):
        session = session_at_round_1(condition=condition)
        for week in (1, 2, 3, 4):
            payload = build_payload(session, week)
            for lp in payload.locations:
                assert (lp.graphics is not None) == condition.has_graphics
                assert (lp.text is not None) == (
                    condition is not PresentationCondition.GRAPHICS_ONLY
                )
                if lp.text is not None:
                    assert lp.text.strategy is condition.text_strategy
            if week < 4:
                session, _ = advance(session, DecisionRecord(week, "A", 5))

    def test_text_only_payload_has_no_numeric_probability(self):
        session = session_at_round_1(condition=PresentationCondition.WMO_ONLY)
        doc = build_payload(session, 1).to_json_dict()
        for entry in doc["locations"]:
            assert "graphics" not in entry

    def test_wrong_phase(self):
        session = fresh_session()
        with pytest.raises(PhaseError):
            build_payload(session, 1)
        session = session_at_round_1()
        with pytest.raises(PhaseError):
            build_payload(session, 2)


class TestAdvance:
    def test_full_game_reaches_summary_with_conserved_balance(self):
        session = session_at_round_1()
        for week in (1, 2, 3, 4):
            session, _ = advance(session, DecisionRecord(week, "B", week * 2))
        assert session.phase is Phase.SUMMARY
        assert session.balance == sum(o.payoff for o in session.outcomes)
        assert len(session.decisions) == len(session.outcomes) == 4

    def test_summary_is_terminal(self):
        session = session_at_round_1()
        for week in (1, 2, 3, 4):
            session, _ = advance(session, DecisionRecord(week, "A", 5))
        with pytest.raises(PhaseError):
            advance(session, DecisionRecord(4, "A", 5))

    def test_replayed_round_is_rejected(self):
        session = session_at_round_1()
        session, _ = advance(session, DecisionRecord(1, "A", 5))
        session, _ = advance(session, DecisionRecord(2, "A", 5))
        balance = session.balance
        with pytest.raises(IdempotencyError):
            advance(session, DecisionRecord(2, "A", 5))
        assert session.balance == balance  # unchanged

    def test_phase_mismatch_input_types(self):
        session = fresh_session()
        with pytest.raises(PhaseError):
            advance(session, DecisionRecord(1, "A", 5))
        session, _ = advance(session, Demographics())
        with pytest.raises(PhaseError):
            advance(session, Demographics())

    def test_event_ids_are_gapless(self):
        session, events = create_session("s-ev", 7, PresentationCondition.NATURAL_ONLY)
        all_events = list(events)
        session, evs = advance(session, Demographics())
        all_events += evs
        session, evs = advance(session, ALL_WRONG)
        all_events += evs
        for week in (1, 2, 3, 4):
            session, evs = advance(session, DecisionRecord(week, "A", 1))
            all_events += evs
        assert [e.event_id for e in all_events] == list(range(1, len(all_events) + 1))
        kinds = [e.kind.value for e in all_events]
        assert kinds[0] == "SESSION_CREATED" and kinds[-1] == "SUMMARY"

    def test_summary_exposes_totals(self):
        session = session_at_round_1()
        for week in (1, 2, 3, 4):
            session, _ = advance(session, DecisionRecord(week, "A", 10))
        report = engine.summary(session)
        assert report["balance"] == session.balance
        assert report["numeracy_score"] == 4

    def test_summary_before_game_end_is_an_error(self):
        with pytest.raises(PhaseError):
            engine.summary(session_at_round_1())
