"""Append-only event log for experiment sessions, with JSON-lines export.

The log is the source of truth: session state is reconstructed by
replaying events (see engine.replay_session). Appends within a session
must be gapless and strictly increasing; the store rejects anything else.
"""

from __future__ import annotations

import io
import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Iterator


class EventKind(Enum):
    SESSION_CREATED = "SESSION_CREATED"
    CONDITION_ASSIGNED = "CONDITION_ASSIGNED"
    DEMOGRAPHICS = "DEMOGRAPHICS"
    NUMERACY_ANSWER = "NUMERACY_ANSWER"
    PAYLOAD_SHOWN = "PAYLOAD_SHOWN"
    DECISION = "DECISION"
    OUTCOME = "OUTCOME"
    SUMMARY = "SUMMARY"


class SequenceError(Exception):
    """Event id is not exactly last-persisted + 1 for its session."""


class SessionNotFound(KeyError):
    pass


def format_timestamp(dt: datetime) -> str:
    """RFC 3339 UTC with millisecond precision."""
    dt = dt.astimezone(timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%S.") + f"{dt.microsecond // 1000:03d}Z"


@dataclass(frozen=True)
class SessionEvent:
    session_id: str
    event_id: int
    timestamp: str  # RFC 3339, millisecond precision
    kind: EventKind
    body: dict

    def to_json_line(self) -> str:
        doc = {
            "session_id": self.session_id,
            "event_id": self.event_id,
            "timestamp": self.timestamp,
            "kind": self.kind.value,
            "body": self.body,
        }
        line = json.dumps(doc, separators=(",", ":"), ensure_ascii=False)
        if len(line.encode("utf-8")) > 16384:
            raise ValueError("event line exceeds 16 KiB")
        return line

    @classmethod
    def from_json_line(cls, line: str) -> "SessionEvent":
        doc = json.loads(line)
        return cls(
            session_id=doc["session_id"],
            event_id=doc["event_id"],
            timestamp=doc["timestamp"],
            kind=EventKind(doc["kind"]),
            body=doc["body"],
        )


class EventStore:
    """In-memory event log, optionally mirrored to a JSON-lines file.

    Appends to different sessions may interleave; within a session the
    sequence precondition serializes writers.
    """

    def __init__(self, path: str | None = None):
        self._events: dict[str, list[SessionEvent]] = {}
        self._lock = threading.Lock()
        self._path = path
        self._file = None
        if path is not None:
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if line:
                            self._append_memory(SessionEvent.from_json_line(line))
            except FileNotFoundError:
                pass
            self._file = open(path, "a", encoding="utf-8")

    def _append_memory(self, event: SessionEvent) -> None:
        events = self._events.setdefault(event.session_id, [])
        expected = events[-1].event_id + 1 if events else 1
        if event.event_id != expected:
            raise SequenceError(
                f"session {event.session_id}: expected event_id {expected}, "
                f"got {event.event_id}"
            )
        events.append(event)

    def append(self, event: SessionEvent) -> None:
        with self._lock:
            self._append_memory(event)
            if self._file is not None:
                self._file.write(event.to_json_line() + "\n")
                self._file.flush()

    def append_all(self, events) -> None:
        for e in events:
            self.append(e)

    def session_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._events)

    def load_session(self, session_id: str) -> list[SessionEvent]:
        with self._lock:
            if session_id not in self._events:
                raise SessionNotFound(session_id)
            return list(self._events[session_id])

    def export_lines(
        self,
        condition: str | None = None,
        since: str | None = None,
        until: str | None = None,
    ) -> Iterator[str]:
        """Canonical export: one JSON object per line, (session_id, event_id) order.

        Filters: `condition` keeps sessions whose assigned condition matches;
        since/until are inclusive RFC 3339 bounds on SESSION_CREATED time.
        """
        with self._lock:
            sessions = {sid: list(evs) for sid, evs in self._events.items()}
        for sid in sorted(sessions):
            events = sessions[sid]
            if condition is not None:
                assigned = [
                    e.body.get("condition")
                    for e in events
                    if e.kind is EventKind.CONDITION_ASSIGNED
                ]
                if condition not in assigned:
                    continue
            if since is not None or until is not None:
                created = [e for e in events if e.kind is EventKind.SESSION_CREATED]
                t0 = created[0].timestamp if created else None
                if t0 is None:
                    continue
                if since is not None and t0 < since:
                    continue
                if until is not None and t0 > until:
                    continue
            for e in events:
                yield e.to_json_line()

    def export(self, out: io.TextIOBase, **filters) -> int:
        n = 0
        for line in self.export_lines(**filters):
            out.write(line + "\n")
            n += 1
        return n

    def close(self) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None


def read_jsonl(stream) -> Iterator[SessionEvent]:
    """Parse an export stream, reporting the line number on malformed input."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield SessionEvent.from_json_line(line)
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ValueError(f"malformed event at line {lineno}: {exc}") from exc
