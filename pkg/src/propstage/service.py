"""Live session service: the replay pipeline behind a WebSocket.

One socket = one session.  Every message in either direction is one
canonical JSON record — the same record schemas as the files, so a recorded
inbound message log *is* a stream file and the recorded outbound records,
demultiplexed by type, *are* the event and render logs (docs/protocol.md).

Inbound: first the stream header, then frame / control / oracle records
(truth records are accepted and ignored).  Outbound: both log headers on
connect, then per frame the echoed controls/flips, events, effects and one
render record.  A bad record gets {"type": "error", ...} back and the
session keeps running; errors never appear in the logs.
"""
from __future__ import annotations

import json

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .condition import ProtocolError, ScriptedOracle
from .formats import (
    EVENT_LOG_KIND,
    RENDER_LOG_KIND,
    MalformedRecord,
    NonMonotonicFrame,
    SchemaMismatch,
    canonical_dumps,
    frame_from_record,
    log_header,
    parse_stream_header,
    validate_control,
    validate_oracle_flip,
)
from .session import Session
from .tracking import StreamOrderError

_SESSION_ERRORS = (
    MalformedRecord, SchemaMismatch, NonMonotonicFrame, StreamOrderError,
    ProtocolError,
)


class _SocketSession:
    """Parsing and ordering state for one connected client."""

    def __init__(self, presentation, oracle):
        self.session = Session(presentation, oracle)
        self.frame_size = None
        self.fps = None
        self.line_no = 0
        self.last_frame_index = None
        self.last_timestamp = None

    def handle(self, text: str) -> list:
        """One inbound message -> outbound record lines."""
        self.line_no += 1
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedRecord(self.line_no, f"not valid JSON: {e}") from None
        if not isinstance(rec, dict):
            raise MalformedRecord(self.line_no, "record must be a JSON object")
        rtype = rec.get("type")

        if self.frame_size is None:
            if rtype != "header":
                raise MalformedRecord(self.line_no, "first record must be the stream header")
            head = parse_stream_header(rec, self.line_no)
            self.frame_size = tuple(head["frameSize"])
            self.fps = head["fps"]
            return []

        if rtype == "header":
            raise MalformedRecord(self.line_no, "duplicate stream header")
        if rtype == "control":
            self.session.queue_control(validate_control(rec, self.line_no))
            return []
        if rtype == "oracle":
            self.session.queue_oracle_flip(validate_oracle_flip(rec, self.line_no))
            return []
        if rtype == "truth":
            return []   # ground-truth annotations are legal stream content
        if rtype == "frame":
            tf = frame_from_record(rec, self.frame_size, self.line_no)
            if self.last_frame_index is not None and (
                tf.frame_index <= self.last_frame_index
                or tf.timestamp < self.last_timestamp
            ):
                raise NonMonotonicFrame(
                    self.line_no,
                    f"frame {tf.frame_index} at t={tf.timestamp} after "
                    f"{self.last_frame_index} at t={self.last_timestamp}",
                )
            self.last_frame_index = tf.frame_index
            self.last_timestamp = tf.timestamp
            out = self.session.process_frame(tf)
            lines = [canonical_dumps(r) for r in out.event_records]
            lines.append(canonical_dumps(out.render_rec))
            return lines
        raise MalformedRecord(self.line_no, f"unknown record type {rtype!r}")


def create_app(presentation, oracle_factory=None, static_dir=None) -> FastAPI:
    app = FastAPI(title="propstage session service")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "scenes": len(presentation.scenes)}

    @app.websocket("/session")
    async def session_ws(ws: WebSocket):
        await ws.accept()
        oracle = oracle_factory() if oracle_factory is not None else ScriptedOracle()
        sock = _SocketSession(presentation, oracle)
        await ws.send_text(canonical_dumps(log_header(EVENT_LOG_KIND)))
        await ws.send_text(canonical_dumps(log_header(RENDER_LOG_KIND)))
        try:
            while True:
                text = await ws.receive_text()
                try:
                    lines = sock.handle(text)
                except _SESSION_ERRORS as e:
                    await ws.send_text(canonical_dumps(
                        {"type": "error", "message": str(e)}
                    ))
                    continue
                for line in lines:
                    await ws.send_text(line)
        except WebSocketDisconnect:
            pass

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
