"""HTTP/JSON facade over the game engine, for the browser UI and headless agents.

All game state is server-held: text-only conditions never receive numeric
probabilities, and outcomes for future rounds are never exposed. Every
state-changing request is appended to the event store before the response
is sent.
"""

from __future__ import annotations

import os
import random
import threading
import uuid
from dataclasses import replace
from typing import Optional

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import engine
from .engine import (
    DecisionRecord,
    Demographics,
    IdempotencyError,
    Phase,
    PhaseError,
    ProtocolError,
)
from .store import EventKind, EventStore, SequenceError, SessionEvent, format_timestamp

ADMIN_TOKEN_ENV = "WEATHERGAME_ADMIN_TOKEN"


class ApiError(Exception):
    STATUS = {
        "BAD_REQUEST": 400,
        "NOT_FOUND": 404,
        "PHASE_CONFLICT": 409,
        "SEQUENCE_ERROR": 409,
    }

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    @property
    def status(self) -> int:
        return self.STATUS[self.code]


class DemographicsBody(BaseModel):
    gender: Optional[str] = None
    education_level: Optional[str] = None
    native_speaker: Optional[bool] = None
    risk_experience: Optional[bool] = None
    weather_model_familiarity: Optional[bool] = None


class CreateSessionBody(BaseModel):
    demographics: Optional[DemographicsBody] = None


class DecisionBody(BaseModel):
    week: int
    chosen_location: str
    confidence: int


class NumeracyAnswerBody(BaseModel):
    question_id: str
    answer: str


class NumeracyBody(BaseModel):
    answers: list[NumeracyAnswerBody] = Field(min_length=1)


def create_app(
    store: Optional[EventStore] = None,
    master_seed: int = 0,
) -> FastAPI:
    app = FastAPI(title="weathergame", version="1")
    state = {
        "store": store if store is not None else EventStore(),
        "sessions": {},  # session_id -> engine.Session
        "counter": 0,
        "lock": threading.Lock(),
    }
    app.state.weathergame = state

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    def get_session(session_id: str) -> engine.Session:
        try:
            return state["sessions"][session_id]
        except KeyError:
            raise ApiError("NOT_FOUND", f"unknown session {session_id}") from None

    def persist(events) -> None:
        try:
            state["store"].append_all(events)
        except SequenceError as exc:
            raise ApiError("SEQUENCE_ERROR", str(exc)) from exc

    @app.post("/v1/sessions", status_code=201)
    def create_session(body: Optional[CreateSessionBody] = None):
        with state["lock"]:
            counter = state["counter"]
            state["counter"] += 1
        condition = engine.assign_condition(counter)
        seed = random.Random(f"api:{master_seed}:{counter}").getrandbits(64)
        session_id = uuid.uuid4().hex
        session, events = engine.create_session(session_id, seed, condition)
        persist(events)
        demographics = Demographics(
            **(body.demographics.model_dump() if body and body.demographics else {})
        )
        session, events = engine.advance(session, demographics)
        persist(events)
        state["sessions"][session_id] = session
        return {
            "session_id": session_id,
            "condition": condition.value,
            "phase": session.phase.value,
        }

    @app.get("/v1/sessions/{session_id}/rounds/{week}")
    def get_round(session_id: str, week: int):
        session = get_session(session_id)
        if week not in (1, 2, 3, 4):
            raise ApiError("BAD_REQUEST", f"week must be 1..4, got {week}")
        with state["lock"]:
            try:
                payload = engine.build_payload(session, week)
            except PhaseError as exc:
                raise ApiError("PHASE_CONFLICT", str(exc)) from exc
            doc = payload.to_json_dict()
            persist(
                [
                    SessionEvent(
                        session_id=session_id,
                        event_id=session.event_seq + 1,
                        timestamp=format_timestamp(engine.utc_now()),
                        kind=EventKind.PAYLOAD_SHOWN,
                        body=doc,
                    )
                ]
            )
            state["sessions"][session_id] = replace(
                session, event_seq=session.event_seq + 1
            )
        return doc

    @app.post("/v1/sessions/{session_id}/decisions")
    def post_decision(session_id: str, body: DecisionBody):
        session = get_session(session_id)
        try:
            record = DecisionRecord(
                week=body.week,
                chosen_location=body.chosen_location,
                confidence=body.confidence,
            )
        except ValueError as exc:
            raise ApiError("BAD_REQUEST", str(exc)) from exc
        with state["lock"]:
            session = get_session(session_id)
            try:
                new_session, events = engine.advance(session, record)
            except IdempotencyError as exc:
                raise ApiError("PHASE_CONFLICT", str(exc)) from exc
            except PhaseError as exc:
                raise ApiError("PHASE_CONFLICT", str(exc)) from exc
            persist(events)
            state["sessions"][session_id] = new_session
        outcome = new_session.outcomes[-1]
        return {
            "week": record.week,
            "rain_occurred": outcome.rain_occurred,
            "payoff": outcome.payoff,
            "balance": new_session.balance,
            "phase": new_session.phase.value,
        }

    @app.post("/v1/sessions/{session_id}/numeracy")
    def post_numeracy(session_id: str, body: NumeracyBody):
        with state["lock"]:
            session = get_session(session_id)
            answers = [(a.question_id, a.answer) for a in body.answers]
            try:
                new_session, events = engine.advance(session, answers)
            except ProtocolError as exc:
                raise ApiError("BAD_REQUEST", str(exc)) from exc
            except PhaseError as exc:
                raise ApiError("PHASE_CONFLICT", str(exc)) from exc
            persist(events)
            state["sessions"][session_id] = new_session
        result = new_session.numeracy
        return {
            "score": result.score,
            "literate": result.literate,
            "phase": new_session.phase.value,
        }

    @app.get("/v1/sessions/{session_id}/summary")
    def get_summary(session_id: str):
        session = get_session(session_id)
        try:
            return engine.summary(session)
        except PhaseError as exc:
            raise ApiError("PHASE_CONFLICT", str(exc)) from exc

    @app.get("/v1/export")
    def export(x_admin_token: Optional[str] = Header(default=None)):
        expected = os.environ.get(ADMIN_TOKEN_ENV)
        if not expected or x_admin_token != expected:
            raise ApiError("NOT_FOUND", "not found")
        lines = "\n".join(state["store"].export_lines())
        return PlainTextResponse(lines + ("\n" if lines else ""))

    return app
