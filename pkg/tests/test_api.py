import json

import pytest
from fastapi.testclient import TestClient

from weathergame.api import ADMIN_TOKEN_ENV, create_app
from weathergame.store import EventStore

ALL_CORRECT = [
    {"question_id": "q1", "answer": "100"},
    {"question_id": "q2_hard", "answer": "50"},
    {"question_id": "q3_hard", "answer": "30"},
    {"question_id": "q4_hard", "answer": "5"},
]


@pytest.fixture
def client():
    app = create_app(store=EventStore(), master_seed=99)
    with TestClient(app) as c:
        yield c


def create(client, demographics=None):
    body = {"demographics": demographics} if demographics else {}
    r = client.post("/v1/sessions", json=body)
    assert r.status_code == 201
    return r.json()


def play_rounds(client, session_id, weeks=(1, 2, 3, 4)):
    outcomes = []
    for week in weeks:
        r = client.get(f"/v1/sessions/{session_id}/rounds/{week}")
        assert r.status_code == 200
        r = client.post(
            f"/v1/sessions/{session_id}/decisions",
            json={"week": week, "chosen_location": "A", "confidence": 5},
        )
        assert r.status_code == 200
        outcomes.append(r.json())
    return outcomes


class TestCreateSession:
    def test_distinct_ids_and_cycling_conditions(self, client):
        seen = [create(client)["condition"] for _ in range(5)]
        assert len(set(seen)) == 5
        assert create(client)["condition"] == seen[0]  # mod-5 wrap

    def test_starts_in_numeracy_after_demographics(self, client):
        desc = create(client, {"gender": "female"})
        assert desc["phase"] == "NUMERACY"

    def test_malformed_body(self, client):
        r = client.post("/v1/sessions", json={"demographics": {"native_speaker": "maybe"}})
        assert r.status_code == 422  # pydantic validation


class TestRounds:
    def test_round_before_numeracy_conflicts(self, client):
        sid = create(client)["session_id"]
        r = client.get(f"/v1/sessions/{sid}/rounds/1")
        assert r.status_code == 409
        assert r.json()["code"] == "PHASE_CONFLICT"

    def test_week_out_of_range(self, client):
        sid = create(client)["session_id"]
        r = client.get(f"/v1/sessions/{sid}/rounds/5")
        assert r.status_code == 400

    def test_unknown_session(self, client):
        r = client.get("/v1/sessions/nope/rounds/1")
        assert r.status_code == 404

    def test_graphics_only_payload_has_no_text(self, client):
        # counter 0 -> GRAPHICS_ONLY
        sid = create(client)["session_id"]
        client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
        payload = client.get(f"/v1/sessions/{sid}/rounds/1").json()
        for loc in payload["locations"]:
            assert "text" not in loc and "graphics" in loc

    def test_text_only_payload_has_no_numeric_probability(self, client):
        conditions = {}
        for _ in range(5):
            desc = create(client)
            conditions[desc["condition"]] = desc["session_id"]
        for condition in ("WMO_ONLY", "NATURAL_ONLY"):
            sid = conditions[condition]
            client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
            payload = client.get(f"/v1/sessions/{sid}/rounds/1").json()
            for loc in payload["locations"]:
                assert "graphics" not in loc
            assert "rain_chance_percent" not in json.dumps(payload)


class TestDecisions:
    def test_confidence_out_of_range(self, client):
        sid = create(client)["session_id"]
        client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
        r = client.post(
            f"/v1/sessions/{sid}/decisions",
            json={"week": 1, "chosen_location": "A", "confidence": 0},
        )
        assert r.status_code == 400

    def test_balance_delta_equals_payoff(self, client):
        sid = create(client)["session_id"]
        client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
        balance = 0.0
        for outcome in play_rounds(client, sid):
            balance += outcome["payoff"]
            assert outcome["balance"] == pytest.approx(balance)

    def test_replay_conflicts_and_preserves_balance(self, client):
        sid = create(client)["session_id"]
        client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
        play_rounds(client, sid, weeks=(1, 2))
        r3 = client.get(f"/v1/sessions/{sid}/rounds/3")
        assert r3.status_code == 200
        replay = client.post(
            f"/v1/sessions/{sid}/decisions",
            json={"week": 2, "chosen_location": "B", "confidence": 9},
        )
        assert replay.status_code == 409
        assert replay.json()["code"] == "PHASE_CONFLICT"


class TestNumeracyAndSummary:
    def test_off_path_answers(self, client):
        sid = create(client)["session_id"]
        r = client.post(
            f"/v1/sessions/{sid}/numeracy",
            json={"answers": [{"question_id": "q2_hard", "answer": "50"}]},
        )
        assert r.status_code == 400

    def test_summary_before_round_4_conflicts(self, client):
        sid = create(client)["session_id"]
        client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
        r = client.get(f"/v1/sessions/{sid}/summary")
        assert r.status_code == 409

    def test_summary_totals(self, client):
        sid = create(client)["session_id"]
        r = client.post(f"/v1/sessions/{sid}/numeracy", json={"answers": ALL_CORRECT})
        assert r.json() == {"score": 4, "literate": True, "phase": "ROUND_1"}
        outcomes = play_rounds(client, sid)
        summary = client.get(f"/v1/sessions/{sid}/summary").json()
        assert summary["balance"] == pytest.approx(sum(o["payoff"] for o in outcomes))
        assert summary["numeracy_score"] == 4


class TestExport:
    def test_requires_admin_token(self, client, monkeypatch):
        monkeypatch.setenv(ADMIN_TOKEN_ENV, "sekrit")
        assert client.get("/v1/export").status_code == 404
        assert client.get("/v1/export", headers={"X-Admin-Token": "wrong"}).status_code == 404
        r = client.get("/v1/export", headers={"X-Admin-Token": "sekrit"})
        assert r.status_code == 200

    def test_gated_when_unconfigured(self, client, monkeypatch):
        monkeypatch.delenv(ADMIN_TOKEN_ENV, raising=False)
        assert client.get("/v1/export", headers={"X-Admin-Token": ""}).status_code == 404
