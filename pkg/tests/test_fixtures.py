"""The committed walkthrough fixtures: every embedded truth record must hold
under replay, and the reference run is pinned byte for byte."""
import pytest

from conftest import FIXTURES
from propstage.condition import ScriptedOracle
from propstage.config import build_presentation, load_raw_config, validate_config
from propstage.formats import EVENT_LOG_KIND, load_stream, log_lines
from propstage.session import replay_stream

NAMES = ("wine", "ev", "fruit", "bench6")
_CACHE = {}


def replayed(name):
    if name not in _CACHE:
        presentation = build_presentation(
            load_raw_config(FIXTURES / f"{name}.config.json")
        )
        stream = load_stream(FIXTURES / f"{name}.stream.jsonl")
        events, renders, summary = replay_stream(
            presentation, stream, ScriptedOracle()
        )
        _CACHE[name] = (stream, events, renders, summary)
    return _CACHE[name]


def matches(record, match):
    return all(record.get(k) == v for k, v in match.items())


@pytest.mark.parametrize("name", NAMES)
def test_configs_validate_cleanly(name):
    issues = validate_config(load_raw_config(FIXTURES / f"{name}.config.json"))
    assert issues == []


@pytest.mark.parametrize("name", NAMES)
def test_every_embedded_truth_record_holds(name):
    stream, events, renders, summary = replayed(name)
    truths = stream.truths()
    assert truths, f"{name} fixture carries no ground truth"
    for t in truths:
        data = t["data"]
        if t["kind"] == "eventCount":
            got = sum(
                1 for r in events
                if r.get("type") == "event" and matches(r, data["match"])
            )
        elif t["kind"] == "effectCount":
            got = sum(
                1 for r in events
                if r.get("type") == "effect" and matches(r, data["match"])
            )
        elif t["kind"] == "finalScene":
            assert summary["finalSceneIndex"] == data["index"], t
            continue
        else:
            pytest.fail(f"unknown truth kind {t['kind']!r}")
        assert got == data["count"], f"{name}: {data['match']} -> {got}"


@pytest.mark.parametrize("name", NAMES)
def test_render_log_covers_every_frame(name):
    stream, events, renders, summary = replayed(name)
    assert len(renders) == len(stream.frames()) == summary["frames"]
    indexes = [r["frameIndex"] for r in renders]
    assert indexes == sorted(indexes)


def test_reference_walkthrough_event_log_is_pinned():
    _, events, _, _ = replayed("wine")
    got = log_lines(EVENT_LOG_KIND, events)
    expected = (FIXTURES / "wine.events.golden.jsonl").read_text().splitlines()
    assert got == expected
