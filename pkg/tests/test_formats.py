import json

import pytest

from conftest import FIXTURES
from propstage.core import Rect, Vec3
from propstage.events import KIND_LIFTED, KIND_PROXIMITY_JOIN, ManipulationEvent
from propstage.formats import (
    EVENT_LOG_KIND,
    MalformedRecord,
    NonMonotonicFrame,
    RENDER_LOG_KIND,
    SchemaMismatch,
    TrackStream,
    canonical_dumps,
    control_record,
    effect_record,
    event_record,
    frame_from_record,
    frame_record,
    load_stream,
    log_header,
    log_lines,
    oracle_flip_record,
    parse_log_lines,
    parse_oracle_script_lines,
    parse_stream_lines,
    validate_control,
    validate_oracle_flip,
    write_stream,
)
from propstage.scene import EFFECT_SELECT_SERIES, VisEffect
from propstage.tracking import Detection, Hand, TrackFrame


def sample_frame(fi=3):
    return TrackFrame(
        timestamp=fi / 30.0,
        frame_index=fi,
        detections=(
            Detection("bottle", Rect(600.0, 300.0, 40.0, 60.0), Vec3(-0.32, 0.0, 0.7),
                      confidence=0.95),
        ),
        hands=(Hand("right", (640.0, 360.0)),),
        face_box=Rect(560.0, 40.0, 160.0, 160.0),
        frame_size=(1280, 720),
    )


# -- canonical encoding -----------------------------------------------------------


def test_canonical_dumps_golden_string():
    rec = {"b": 2, "a": [1.5, "x"], "nested": {"z": 1, "y": None}}
    assert canonical_dumps(rec) == '{"a":[1.5,"x"],"b":2,"nested":{"y":null,"z":1}}'


def test_canonical_dumps_escapes_non_ascii():
    assert canonical_dumps({"t": "café"}) == '{"t":"caf\\u00e9"}'


def test_event_record_golden_line():
    ev = ManipulationEvent(KIND_LIFTED, 345, 11.5, object_id=3)
    assert canonical_dumps(event_record(ev)) == (
        '{"frameIndex":345,"kind":"Lifted","objectId":3,'
        '"timestamp":11.5,"type":"event"}'
    )


def test_event_record_carries_pair_payload():
    ev = ManipulationEvent(KIND_PROXIMITY_JOIN, 10, 0.5, object_id=1, other_id=3,
                           orientation="horizontal")
    rec = event_record(ev)
    assert rec["objectId"] == 1
    assert rec["otherId"] == 3
    assert rec["orientation"] == "horizontal"
    assert "visId" not in rec  # absent fields stay absent


def test_effect_record_golden_line():
    fx = VisEffect(EFFECT_SELECT_SERIES, vis_id=5, object_id=3, series_name="Australian wine")
    assert canonical_dumps(effect_record(fx, 345, 11.5)) == (
        '{"effect":"SelectSeries","frameIndex":345,"objectId":3,'
        '"seriesName":"Australian wine","timestamp":11.5,"type":"effect","visId":5}'
    )


def test_log_headers_are_content_fixed():
    # live and replayed logs must agree byte-for-byte, so headers carry
    # no timestamps, hostnames, or any other volatile fields
    assert canonical_dumps(log_header(EVENT_LOG_KIND)) == (
        '{"kind":"event-log","schemaVersion":1,"type":"header"}'
    )
    assert canonical_dumps(log_header(RENDER_LOG_KIND)) == (
        '{"kind":"render-log","schemaVersion":1,"type":"header"}'
    )


# -- frame records ------------------------------------------------------------------


def test_frame_record_round_trip():
    f = sample_frame()
    back = frame_from_record(frame_record(f), (1280, 720))
    assert back == f


def test_frame_record_orders_hands_by_side():
    f = TrackFrame(
        timestamp=0.0, frame_index=0,
        hands=(Hand("right", (1.0, 2.0)), Hand("left", (3.0, 4.0))),
    )
    rec = frame_record(f)
    assert [h["side"] for h in rec["hands"]] == ["left", "right"]


def test_frame_rejects_unknown_field():
    rec = frame_record(sample_frame())
    rec["extra"] = 1
    with pytest.raises(MalformedRecord) as exc:
        frame_from_record(rec, (1280, 720), line_no=7)
    assert "line 7" in str(exc.value)
    assert "extra" in str(exc.value)


def test_frame_rejects_missing_field():
    rec = frame_record(sample_frame())
    del rec["timestamp"]
    with pytest.raises(MalformedRecord) as exc:
        frame_from_record(rec, (1280, 720), line_no=9)
    assert "timestamp" in str(exc.value)


# -- control / oracle records ---------------------------------------------------------


def test_control_records_validate():
    assert validate_control(control_record("SceneNext")) == {"type": "control", "cmd": "SceneNext"}
    rec = control_record("SetPointingHand", hand="left")
    assert validate_control(rec)["hand"] == "left"


def test_control_rejects_unknown_cmd_and_stray_hand():
    with pytest.raises(MalformedRecord):
        validate_control({"type": "control", "cmd": "Dance"})
    with pytest.raises(MalformedRecord):
        validate_control({"type": "control", "cmd": "Pause", "hand": "left"})
    with pytest.raises(MalformedRecord):
        validate_control({"type": "control", "cmd": "SetPointingHand"})


def test_oracle_flip_validates_binary_answer():
    assert validate_oracle_flip(oracle_flip_record("cellar-check", 1))["answer"] == 1
    with pytest.raises(MalformedRecord):
        validate_oracle_flip({"type": "oracle", "conditionId": "c", "answer": 2})


# -- stream container ------------------------------------------------------------------


def make_stream():
    stream = TrackStream(frame_size=(1280, 720), fps=30.0, description="unit fixture")
    stream.records.append(("frame", sample_frame(0)))
    stream.records.append(("control", control_record("SceneNext")))
    stream.records.append(("frame", sample_frame(1)))
    stream.records.append(("oracle", oracle_flip_record("check", 1)))
    stream.records.append(("truth", {"type": "truth", "kind": "eventCount",
                                     "data": {"match": {"kind": "Lifted"}, "count": 1}}))
    return stream


def test_stream_lines_round_trip_byte_identical(tmp_path):
    stream = make_stream()
    p = tmp_path / "s.stream.jsonl"
    write_stream(p, stream)
    text1 = p.read_text(encoding="utf-8")
    back = load_stream(p)
    write_stream(p, back)
    assert p.read_text(encoding="utf-8") == text1
    assert len(back.frames()) == 2
    assert len(back.truths()) == 1
    assert back.description == "unit fixture"


def test_stream_requires_header_first():
    body = canonical_dumps(frame_record(sample_frame(0)))
    with pytest.raises(SchemaMismatch):
        parse_stream_lines([body])
    with pytest.raises(SchemaMismatch):
        parse_stream_lines([])


def test_stream_rejects_wrong_schema_version():
    head = make_stream().header_record()
    head["schemaVersion"] = 99
    with pytest.raises(SchemaMismatch):
        parse_stream_lines([canonical_dumps(head)])


def test_stream_error_carries_line_number():
    lines = make_stream().lines()
    lines.insert(3, "{not json")
    with pytest.raises(MalformedRecord) as exc:
        parse_stream_lines(lines)
    assert exc.value.line_no == 4
    assert "line 4" in str(exc.value)


def test_stream_rejects_non_monotonic_frames():
    stream = TrackStream(frame_size=(1280, 720), fps=30.0)
    stream.records.append(("frame", sample_frame(5)))
    stream.records.append(("frame", sample_frame(5)))
    with pytest.raises(NonMonotonicFrame):
        parse_stream_lines(stream.lines())


def test_stream_rejects_unknown_record_type():
    lines = make_stream().lines()
    lines.append(canonical_dumps({"type": "mystery"}))
    with pytest.raises(MalformedRecord) as exc:
        parse_stream_lines(lines)
    assert "mystery" in str(exc.value)


def test_stream_skips_blank_lines():
    lines = make_stream().lines()
    lines.insert(2, "")
    lines.append("   ")
    parsed = parse_stream_lines(lines)
    assert len(parsed.frames()) == 2


# -- oracle scripts ----------------------------------------------------------------------


def script_lines(latency=1.08):
    return [
        canonical_dumps({"type": "header", "kind": "oracle-script", "schemaVersion": 1,
                         "latencySeconds": latency}),
        canonical_dumps({"type": "entry", "conditionId": "cellar-check",
                         "fromTime": 5.0, "answer": 1}),
    ]


def test_oracle_script_parses_entries_and_latency():
    entries, latency = parse_oracle_script_lines(script_lines())
    assert latency == 1.08
    assert entries == [{"type": "entry", "conditionId": "cellar-check",
                        "fromTime": 5.0, "answer": 1}]


def test_oracle_script_rejects_non_binary_answer():
    lines = script_lines()
    lines.append(canonical_dumps({"type": "entry", "conditionId": "c",
                                  "fromTime": 0.0, "answer": 3}))
    with pytest.raises(MalformedRecord) as exc:
        parse_oracle_script_lines(lines)
    assert exc.value.line_no == 3


def test_oracle_script_requires_its_own_kind():
    stream_head = canonical_dumps(make_stream().header_record())
    with pytest.raises(SchemaMismatch):
        parse_oracle_script_lines([stream_head])


# -- log validation ------------------------------------------------------------------------


def test_log_round_trip_and_unknown_field_rejection():
    ev = ManipulationEvent(KIND_LIFTED, 1, 0.033, object_id=2)
    lines = log_lines(EVENT_LOG_KIND, [event_record(ev)])
    out = parse_log_lines(lines, EVENT_LOG_KIND)
    assert out == [event_record(ev)]

    bad = json.loads(lines[1])
    bad["surprise"] = True
    with pytest.raises(MalformedRecord) as exc:
        parse_log_lines([lines[0], canonical_dumps(bad)], EVENT_LOG_KIND)
    assert "surprise" in str(exc.value)


def test_log_kind_mismatch_is_schema_error():
    lines = log_lines(EVENT_LOG_KIND, [])
    with pytest.raises(SchemaMismatch):
        parse_log_lines(lines, RENDER_LOG_KIND)


# -- committed fixtures are canonical ---------------------------------------------------------


def test_committed_fixture_streams_are_in_canonical_form():
    for name in ("wine", "ev", "fruit", "bench6"):
        path = FIXTURES / f"{name}.stream.jsonl"
        text = path.read_text(encoding="utf-8")
        stream = parse_stream_lines(text.splitlines())
        assert "\n".join(stream.lines()) + "\n" == text, f"{name} not canonical"
