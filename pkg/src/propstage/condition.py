"""Polled condition recognition.

Scenes register natural-language yes/no conditions ("Is the glass filled
with wine?").  An oracle answers them asynchronously; the engine polls on a
per-condition interval, keeps at most one request in flight per condition,
debounces the answers and turns level changes into ConditionMet /
ConditionCleared events applied at frame boundaries.  The frame loop never
blocks on an oracle — a slow or dead oracle just means stale answers.

Two oracle implementations ship: a deterministic scripted oracle (replay,
tests, fixtures) and an optional remote adapter speaking length-prefixed
JSON over a TCP byte stream (response is the single byte '0' or '1').
"""
from __future__ import annotations

import json
import queue
import socket
import struct
import threading
from dataclasses import dataclass

from .events import (
    KIND_CONDITION_CLEARED,
    KIND_CONDITION_MET,
    ManipulationEvent,
)


class ProtocolError(ValueError):
    """An oracle produced a non-binary answer payload."""


class OracleUnavailable(RuntimeError):
    """The oracle cannot accept a request right now."""


def is_first_person_prompt(prompt: str) -> bool:
    """Prompts phrased from the presenter's viewpoint ("Am I ...", "Do I ...")
    answer much less reliably than object-centred ones; config validation
    warns about them."""
    return prompt.strip().lower().startswith(("am i ", "do i ", "am i?", "do i?"))


@dataclass(frozen=True)
class ConditionSpec:
    condition_id: str
    prompt: str
    poll_interval_seconds: float = 1.0
    debounce_count: int = 2
    latching: bool = False
    # ((binding_key, chart_name), ...) applied on ConditionMet
    swap_charts: tuple = ()


@dataclass(frozen=True)
class OracleRequest:
    condition_id: str
    prompt: str
    frame_ref: str
    frame_index_asked: int
    asked_at: float


@dataclass(frozen=True)
class OracleAnswer:
    condition_id: str
    answer: int | None          # 0 | 1; None marks an unavailable oracle
    latency_seconds: float
    frame_index_asked: int


@dataclass(frozen=True)
class ScriptEntry:
    condition_id: str
    from_time: float
    to_time: float | None       # None = open-ended
    answer: int


class ScriptedOracle:
    """Deterministic oracle: answers come from a (timeRange, conditionId,
    answer) script evaluated at ask time, delivered after a configurable
    simulated latency in stream time.  An empty script answers 0."""

    def __init__(self, entries=(), latency_seconds: float = 0.0, latency_by_condition=None):
        self.entries = list(entries)
        self.latency_seconds = latency_seconds
        self.latency_by_condition = dict(latency_by_condition or {})
        self._pending: list = []  # (due_time, seq, OracleAnswer)
        self._seq = 0

    def add_flip(self, condition_id: str, from_time: float, answer: int) -> None:
        """Open-ended script entry; later entries override earlier ones."""
        self.entries.append(ScriptEntry(condition_id, from_time, None, int(answer)))

    def answer_at(self, condition_id: str, t: float) -> int:
        ans = 0
        for e in self.entries:
            if e.condition_id != condition_id:
                continue
            if e.from_time <= t and (e.to_time is None or t < e.to_time):
                ans = e.answer  # last matching entry wins
        return ans

    def submit(self, req: OracleRequest) -> None:
        lat = self.latency_by_condition.get(req.condition_id, self.latency_seconds)
        ans = OracleAnswer(
            condition_id=req.condition_id,
            answer=self.answer_at(req.condition_id, req.asked_at),
            latency_seconds=lat,
            frame_index_asked=req.frame_index_asked,
        )
        self._pending.append((req.asked_at + lat, self._seq, ans))
        self._seq += 1

    def collect(self, now: float) -> list:
        due = [p for p in self._pending if p[0] <= now]
        self._pending = [p for p in self._pending if p[0] > now]
        due.sort(key=lambda p: (p[0], p[1]))
        return [a for _, _, a in due]


class RemoteOracleClient:
    """Adapter for a live oracle service.

    Framing: 4-byte big-endian length + UTF-8 JSON {"prompt", "frameRef"};
    the response is a single byte, '0' or '1'.  Each request runs on its own
    thread so the frame loop never waits; failures surface as answer=None
    (counted as dropped ticks by the engine).
    """

    def __init__(self, host: str, port: int, timeout: float = 5.0):
        self.host = host
        self.port = port
        self.timeout = timeout
        self._results: "queue.Queue" = queue.Queue()

    def submit(self, req: OracleRequest) -> None:
        t = threading.Thread(target=self._ask, args=(req,), daemon=True)
        t.start()

    def _ask(self, req: OracleRequest) -> None:
        try:
            with socket.create_connection((self.host, self.port), timeout=self.timeout) as sock:
                payload = json.dumps(
                    {"prompt": req.prompt, "frameRef": req.frame_ref},
                    sort_keys=True,
                ).encode("utf-8")
                sock.sendall(struct.pack(">I", len(payload)) + payload)
                sock.settimeout(self.timeout)
                raw = sock.recv(1)
        except OSError:
            self._results.put(OracleAnswer(req.condition_id, None, 0.0, req.frame_index_asked))
            return
        if raw == b"0":
            ans = 0
        elif raw == b"1":
            ans = 1
        else:
            ans = -1  # provokes ProtocolError at ingest
        self._results.put(OracleAnswer(req.condition_id, ans, 0.0, req.frame_index_asked))

    def collect(self, now: float) -> list:
        out = []
        while True:
            try:
                out.append(self._results.get_nowait())
            except queue.Empty:
                return out


class _ConditionState:
    __slots__ = ("last_poll", "in_flight", "met", "run_pos", "run_neg")

    def __init__(self):
        self.last_poll = None
        self.in_flight = False
        self.met = False
        self.run_pos = 0
        self.run_neg = 0


class ConditionEngine:
    """Drives polling and debouncing for the current scene's conditions."""

    def __init__(self, specs, oracle):
        self.specs = list(specs)
        self.oracle = oracle
        self._state = {s.condition_id: _ConditionState() for s in self.specs}
        self.dropped_ticks = 0

    def poll_tick(self, now: float, frame_ref: str, frame_index: int) -> None:
        """Issue due requests; at most one in flight per condition."""
        for spec in self.specs:
            st = self._state[spec.condition_id]
            if st.in_flight:
                continue
            if st.last_poll is not None and now - st.last_poll < spec.poll_interval_seconds:
                continue
            st.last_poll = now
            req = OracleRequest(
                condition_id=spec.condition_id,
                prompt=spec.prompt,
                frame_ref=frame_ref,
                frame_index_asked=frame_index,
                asked_at=now,
            )
            try:
                self.oracle.submit(req)
            except OracleUnavailable:
                self.dropped_ticks += 1
                continue
            st.in_flight = True

    def drain(self, now: float, frame_index: int, timestamp: float) -> list:
        """Apply answers that completed by ``now``; returns Condition events
        stamped with the current frame."""
        out = []
        for ans in self.oracle.collect(now):
            st = self._state.get(ans.condition_id)
            if st is None:
                continue  # answer for a condition of a previous scene
            st.in_flight = False
            if ans.answer is None:
                self.dropped_ticks += 1
                continue
            ev = self.ingest_answer(ans, frame_index, timestamp)
            if ev is not None:
                out.append(ev)
        return out

    def ingest_answer(self, ans: OracleAnswer, frame_index: int, timestamp: float):
        if ans.answer not in (0, 1):
            raise ProtocolError(
                f"condition {ans.condition_id!r}: non-binary answer {ans.answer!r}"
            )
        spec = next(s for s in self.specs if s.condition_id == ans.condition_id)
        st = self._state[ans.condition_id]
        if ans.answer == 1:
            st.run_pos += 1
            st.run_neg = 0
        else:
            st.run_neg += 1
            st.run_pos = 0
        if not st.met and st.run_pos >= spec.debounce_count:
            st.met = True
            st.run_pos = 0
            return ManipulationEvent(
                KIND_CONDITION_MET, frame_index, timestamp,
                condition_id=ans.condition_id,
            )
        if st.met and not spec.latching and st.run_neg >= spec.debounce_count:
            st.met = False
            st.run_neg = 0
            return ManipulationEvent(
                KIND_CONDITION_CLEARED, frame_index, timestamp,
                condition_id=ans.condition_id,
            )
        return None
