"""Line-delimited record formats: track streams, oracle scripts, event and
render logs.

One JSON record per line, canonical encoding (sorted keys, compact
separators, ASCII escapes), floats written with Python's shortest repr.
Replaying the same inputs therefore produces byte-identical logs, and two
logs can be compared with plain diff.  docs/formats.md is the reference;
unknown fields are rejected at the current schema version so format drift
fails loudly.

The same record schemas travel over the live service socket — a recorded
inbound message log *is* a valid stream file.
"""
from __future__ import annotations

import json

from .core import Rect, Vec3
from .tracking import Detection, Hand, TrackFrame

SCHEMA_VERSION = 1

STREAM_KIND = "track-stream"
EVENT_LOG_KIND = "event-log"
RENDER_LOG_KIND = "render-log"
ORACLE_SCRIPT_KIND = "oracle-script"

CONTROL_COMMANDS = ("SceneNext", "ScenePrev", "SetPointingHand", "Pause", "Resume")


class SchemaMismatch(ValueError):
    """Header missing, wrong kind, or unsupported schemaVersion."""


class MalformedRecord(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NonMonotonicFrame(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def canonical_dumps(record: dict) -> str:
    """The one true encoding for every record this package writes."""
    return json.dumps(record, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _require_fields(d: dict, allowed, required, what: str, line_no: int = 0):
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise MalformedRecord(line_no, f"{what}: unknown field {unknown[0]!r}")
    missing = sorted(set(required) - set(d))
    if missing:
        raise MalformedRecord(line_no, f"{what}: missing field {missing[0]!r}")


# ---------------------------------------------------------------------------
# geometry / detection payloads
# ---------------------------------------------------------------------------

def rect_jsonable(r: Rect) -> list:
    return [float(r.x), float(r.y), float(r.w), float(r.h)]


def vec3_jsonable(v: Vec3) -> list:
    return [float(v.x), float(v.y), float(v.z)]


def detection_jsonable(d: Detection) -> dict:
    return {
        "classLabel": d.class_label,
        "bbox": rect_jsonable(d.bbox),
        "position": vec3_jsonable(d.position),
        "confidence": float(d.confidence),
    }


def detection_from_jsonable(d: dict, line_no: int = 0) -> Detection:
    _require_fields(
        d, ("classLabel", "bbox", "position", "confidence"),
        ("classLabel", "bbox", "position"), "detection", line_no,
    )
    if not isinstance(d["classLabel"], str) or not d["classLabel"]:
        raise MalformedRecord(line_no, "detection: classLabel must be a non-empty string")
    return Detection(
        class_label=d["classLabel"],
        bbox=Rect.from_jsonable(d["bbox"]),
        position=Vec3.from_jsonable(d["position"]),
        confidence=float(d.get("confidence", 1.0)),
    )


def hand_jsonable(h: Hand) -> dict:
    return {"side": h.side, "indexTip": [float(h.index_tip[0]), float(h.index_tip[1])]}


def hand_from_jsonable(d: dict, line_no: int = 0) -> Hand:
    _require_fields(d, ("side", "indexTip"), ("side", "indexTip"), "hand", line_no)
    if d["side"] not in ("left", "right"):
        raise MalformedRecord(line_no, f"hand: bad side {d['side']!r}")
    tip = d["indexTip"]
    if not isinstance(tip, (list, tuple)) or len(tip) != 2:
        raise MalformedRecord(line_no, "hand: indexTip must be [x, y]")
    return Hand(side=d["side"], index_tip=(float(tip[0]), float(tip[1])))


# ---------------------------------------------------------------------------
# stream records
# ---------------------------------------------------------------------------

def frame_record(f: TrackFrame) -> dict:
    rec = {
        "type": "frame",
        "frameIndex": int(f.frame_index),
        "timestamp": float(f.timestamp),
        "detections": [detection_jsonable(d) for d in f.detections],
        "hands": [hand_jsonable(h) for h in sorted(f.hands, key=lambda h: h.side)],
    }
    if f.face_box is not None:
        rec["faceBox"] = rect_jsonable(f.face_box)
    return rec


def frame_from_record(rec: dict, frame_size, line_no: int = 0) -> TrackFrame:
    _require_fields(
        rec, ("type", "frameIndex", "timestamp", "detections", "hands", "faceBox"),
        ("type", "frameIndex", "timestamp", "detections"), "frame", line_no,
    )
    face = rec.get("faceBox")
    return TrackFrame(
        timestamp=float(rec["timestamp"]),
        frame_index=int(rec["frameIndex"]),
        detections=tuple(detection_from_jsonable(d, line_no) for d in rec["detections"]),
        hands=tuple(hand_from_jsonable(h, line_no) for h in rec.get("hands", [])),
        face_box=Rect.from_jsonable(face) if face is not None else None,
        frame_size=tuple(frame_size),
    )


def control_record(cmd: str, hand: str | None = None) -> dict:
    rec = {"type": "control", "cmd": cmd}
    if hand is not None:
        rec["hand"] = hand
    return rec


def validate_control(rec: dict, line_no: int = 0) -> dict:
    _require_fields(rec, ("type", "cmd", "hand"), ("type", "cmd"), "control", line_no)
    if rec["cmd"] not in CONTROL_COMMANDS:
        raise MalformedRecord(line_no, f"control: unknown cmd {rec['cmd']!r}")
    if rec["cmd"] == "SetPointingHand":
        if rec.get("hand") not in ("left", "right"):
            raise MalformedRecord(line_no, "control: SetPointingHand needs hand left|right")
    elif "hand" in rec:
        raise MalformedRecord(line_no, f"control: {rec['cmd']} takes no hand field")
    return rec


def oracle_flip_record(condition_id: str, answer: int) -> dict:
    return {"type": "oracle", "conditionId": condition_id, "answer": int(answer)}


def validate_oracle_flip(rec: dict, line_no: int = 0) -> dict:
    _require_fields(rec, ("type", "conditionId", "answer"), ("type", "conditionId", "answer"),
                    "oracle", line_no)
    if rec["answer"] not in (0, 1):
        raise MalformedRecord(line_no, f"oracle: answer must be 0 or 1, got {rec['answer']!r}")
    return rec


def truth_record(kind: str, data: dict) -> dict:
    return {"type": "truth", "kind": kind, "data": data}


# ---------------------------------------------------------------------------
# stream container
# ---------------------------------------------------------------------------

class TrackStream:
    """A parsed stream file: header metadata plus the ordered record list.

    ``records`` entries are ("frame", TrackFrame) | ("control", dict) |
    ("oracle", dict) | ("truth", dict), in file order.
    """

    def __init__(self, frame_size, fps: float, description: str = "", records=None):
        self.frame_size = (int(frame_size[0]), int(frame_size[1]))
        self.fps = float(fps)
        self.description = description
        self.records = list(records or [])

    def frames(self) -> list:
        return [r for t, r in self.records if t == "frame"]

    def truths(self) -> list:
        return [r for t, r in self.records if t == "truth"]

    def header_record(self) -> dict:
        return {
            "type": "header",
            "kind": STREAM_KIND,
            "schemaVersion": SCHEMA_VERSION,
            "frameSize": [self.frame_size[0], self.frame_size[1]],
            "fps": float(self.fps),
            "description": self.description,
        }

    def lines(self) -> list:
        out = [canonical_dumps(self.header_record())]
        for rtype, rec in self.records:
            if rtype == "frame":
                out.append(canonical_dumps(frame_record(rec)))
            else:
                out.append(canonical_dumps(rec))
        return out


def parse_stream_header(rec: dict, line_no: int = 1) -> dict:
    _require_fields(
        rec, ("type", "kind", "schemaVersion", "frameSize", "fps", "description"),
        ("type", "kind", "schemaVersion", "frameSize", "fps"), "header", line_no,
    )
    if rec.get("kind") != STREAM_KIND:
        raise SchemaMismatch(f"expected kind {STREAM_KIND!r}, got {rec.get('kind')!r}")
    if rec.get("schemaVersion") != SCHEMA_VERSION:
        raise SchemaMismatch(
            f"schemaVersion {rec.get('schemaVersion')!r} unsupported "
            f"(this build reads {SCHEMA_VERSION})"
        )
    return rec


def parse_stream_lines(lines) -> TrackStream:
    it = iter(enumerate(lines, start=1))
    try:
        line_no, first = next(it)
    except StopIteration:
        raise SchemaMismatch("empty stream: header line missing")
    try:
        head = json.loads(first)
    except json.JSONDecodeError as e:
        raise MalformedRecord(1, f"header is not valid JSON: {e}") from None
    if not isinstance(head, dict) or head.get("type") != "header":
        raise SchemaMismatch("first record must be the stream header")
    head = parse_stream_header(head)

    stream = TrackStream(
        frame_size=head["frameSize"], fps=head["fps"],
        description=head.get("description", ""),
    )
    last_index = None
    last_ts = None
    for line_no, line in it:
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedRecord(line_no, f"not valid JSON: {e}") from None
        if not isinstance(rec, dict) or "type" not in rec:
            raise MalformedRecord(line_no, "record must be an object with a type")
        rtype = rec["type"]
        if rtype == "frame":
            frame = frame_from_record(rec, stream.frame_size, line_no)
            if last_index is not None and frame.frame_index <= last_index:
                raise NonMonotonicFrame(
                    line_no, f"frameIndex {frame.frame_index} after {last_index}")
            if last_ts is not None and frame.timestamp <= last_ts:
                raise NonMonotonicFrame(
                    line_no, f"timestamp {frame.timestamp} after {last_ts}")
            last_index = frame.frame_index
            last_ts = frame.timestamp
            stream.records.append(("frame", frame))
        elif rtype == "control":
            stream.records.append(("control", validate_control(rec, line_no)))
        elif rtype == "oracle":
            stream.records.append(("oracle", validate_oracle_flip(rec, line_no)))
        elif rtype == "truth":
            _require_fields(rec, ("type", "kind", "data"), ("type", "kind", "data"),
                            "truth", line_no)
            stream.records.append(("truth", rec))
        else:
            raise MalformedRecord(line_no, f"unknown record type {rtype!r}")
    return stream


def load_stream(path) -> TrackStream:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_stream_lines(fh.read().splitlines())


def write_stream(path, stream: TrackStream) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(stream.lines()) + "\n")


# ---------------------------------------------------------------------------
# oracle script files
# ---------------------------------------------------------------------------

def parse_oracle_script_lines(lines):
    """Returns (entries, latency_seconds).  Entries are dicts with
    conditionId / fromTime / toTime (optional) / answer."""
    it = iter(enumerate(lines, start=1))
    try:
        _, first = next(it)
    except StopIteration:
        raise SchemaMismatch("empty oracle script: header line missing")
    try:
        head = json.loads(first)
    except json.JSONDecodeError as e:
        raise MalformedRecord(1, f"header is not valid JSON: {e}") from None
    if not isinstance(head, dict) or head.get("kind") != ORACLE_SCRIPT_KIND:
        raise SchemaMismatch(f"expected kind {ORACLE_SCRIPT_KIND!r}")
    if head.get("schemaVersion") != SCHEMA_VERSION:
        raise SchemaMismatch(f"schemaVersion {head.get('schemaVersion')!r} unsupported")
    _require_fields(head, ("type", "kind", "schemaVersion", "latencySeconds"),
                    ("type", "kind", "schemaVersion"), "header", 1)
    latency = float(head.get("latencySeconds", 0.0))
    entries = []
    for line_no, line in it:
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedRecord(line_no, f"not valid JSON: {e}") from None
        _require_fields(rec, ("type", "conditionId", "fromTime", "toTime", "answer"),
                        ("type", "conditionId", "fromTime", "answer"), "entry", line_no)
        if rec.get("type") != "entry":
            raise MalformedRecord(line_no, f"unknown record type {rec.get('type')!r}")
        if rec["answer"] not in (0, 1):
            raise MalformedRecord(line_no, f"entry: answer must be 0 or 1")
        entries.append(rec)
    return entries, latency


def load_oracle_script(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_oracle_script_lines(fh.read().splitlines())


# ---------------------------------------------------------------------------
# event / render log records
# ---------------------------------------------------------------------------

_EVENT_PAYLOAD_KEYS = (
    ("object_id", "objectId"),
    ("other_id", "otherId"),
    ("orientation", "orientation"),
    ("vis_id", "visId"),
    ("series_name", "seriesName"),
    ("category", "category"),
    ("band", "band"),
    ("condition_id", "conditionId"),
)


def event_record(ev) -> dict:
    rec = {
        "type": "event",
        "kind": ev.kind,
        "frameIndex": int(ev.frame_index),
        "timestamp": float(ev.timestamp),
    }
    for attr, key in _EVENT_PAYLOAD_KEYS:
        v = getattr(ev, attr)
        if v is not None:
            rec[key] = v
    return rec


_EFFECT_PAYLOAD_KEYS = (
    ("vis_id", "visId"),
    ("object_id", "objectId"),
    ("other_id", "otherId"),
    ("series_name", "seriesName"),
    ("category", "category"),
    ("chart_title", "chartTitle"),
    ("composition", "composition"),
    ("condition_id", "conditionId"),
)


def effect_record(effect, frame_index: int, timestamp: float) -> dict:
    rec = {
        "type": "effect",
        "effect": effect.kind,
        "frameIndex": int(frame_index),
        "timestamp": float(timestamp),
    }
    for attr, key in _EFFECT_PAYLOAD_KEYS:
        v = getattr(effect, attr)
        if v is not None:
            rec[key] = v
    return rec


def placement_entry(vis) -> dict:
    """Wire form of one placed chart inside a render record."""
    spec = vis.spec
    anchors = list(vis.anchor) if isinstance(vis.anchor, tuple) else [vis.anchor]
    chart = {
        "chartType": spec.chart_type,
        "title": spec.title,
        "sourceTag": spec.source_tag,
        "series": [s.to_jsonable() for s in spec.series],
        "highlightSeries": sorted(vis.highlight_series),
        "highlightPoints": sorted([s, c] for s, c in vis.highlight_points),
    }
    if vis.composition is not None:
        chart["composition"] = vis.composition
    return {
        "visId": int(vis.vis_id),
        "objectIds": [int(a) for a in anchors],
        "rect": rect_jsonable(vis.placed_rect),
        "scale": float(vis.scale),
        "chart": chart,
        "markRects": [[s, c, rect_jsonable(r)] for s, c, r in vis.mark_rects],
    }


def annotation_entry(object_id: int, rect: Rect, image_ref, text) -> dict:
    rec = {"objectId": int(object_id), "rect": rect_jsonable(rect)}
    if image_ref is not None:
        rec["imageRef"] = image_ref
    if text is not None:
        rec["text"] = text
    return rec


def render_record(frame_index: int, timestamp: float, placements, annotations,
                  panel: dict, diagnostics: dict) -> dict:
    return {
        "type": "render",
        "frameIndex": int(frame_index),
        "timestamp": float(timestamp),
        "placements": placements,
        "annotations": annotations,
        "panel": panel,
        "diagnostics": diagnostics,
    }


def log_header(kind: str) -> dict:
    # deliberately content-fixed: logs from a live session and from replay
    # must agree byte-for-byte, so no volatile metadata here
    return {"type": "header", "kind": kind, "schemaVersion": SCHEMA_VERSION}


def log_lines(kind: str, records) -> list:
    return [canonical_dumps(log_header(kind))] + [canonical_dumps(r) for r in records]


def write_event_log(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(log_lines(EVENT_LOG_KIND, records)) + "\n")


def write_render_log(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(log_lines(RENDER_LOG_KIND, records)) + "\n")


_LOG_RECORD_FIELDS = {
    "event": (
        ("type", "kind", "frameIndex", "timestamp", "objectId", "otherId",
         "orientation", "visId", "seriesName", "category", "band", "conditionId"),
        ("type", "kind", "frameIndex", "timestamp"),
    ),
    "effect": (
        ("type", "effect", "frameIndex", "timestamp", "visId", "objectId",
         "otherId", "seriesName", "category", "chartTitle", "composition",
         "conditionId"),
        ("type", "effect", "frameIndex", "timestamp"),
    ),
    "control": (("type", "cmd", "hand"), ("type", "cmd")),
    "oracle": (("type", "conditionId", "answer"), ("type", "conditionId", "answer")),
    "render": (
        ("type", "frameIndex", "timestamp", "placements", "annotations",
         "panel", "diagnostics"),
        ("type", "frameIndex", "timestamp", "placements", "annotations",
         "panel", "diagnostics"),
    ),
}


def parse_log_lines(lines, kind: str) -> list:
    """Validate a log file and return its record dicts (header excluded)."""
    it = iter(enumerate(lines, start=1))
    try:
        _, first = next(it)
    except StopIteration:
        raise SchemaMismatch("empty log: header line missing")
    try:
        head = json.loads(first)
    except json.JSONDecodeError as e:
        raise MalformedRecord(1, f"header is not valid JSON: {e}") from None
    if not isinstance(head, dict) or head.get("kind") != kind:
        raise SchemaMismatch(f"expected kind {kind!r}, got {head.get('kind')!r}")
    if head.get("schemaVersion") != SCHEMA_VERSION:
        raise SchemaMismatch(f"schemaVersion {head.get('schemaVersion')!r} unsupported")
    out = []
    for line_no, line in it:
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise MalformedRecord(line_no, f"not valid JSON: {e}") from None
        rtype = rec.get("type")
        if rtype not in _LOG_RECORD_FIELDS:
            raise MalformedRecord(line_no, f"unknown record type {rtype!r}")
        allowed, required = _LOG_RECORD_FIELDS[rtype]
        _require_fields(rec, allowed, required, rtype, line_no)
        out.append(rec)
    return out


def load_event_log(path) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_log_lines(fh.read().splitlines(), EVENT_LOG_KIND)


def load_render_log(path) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_log_lines(fh.read().splitlines(), RENDER_LOG_KIND)
