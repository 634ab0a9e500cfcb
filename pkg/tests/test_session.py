"""Whole-pipeline behaviour: pause semantics, control echo ordering, scene
resets, two-phase hand switching, oracle flips, and re-run determinism."""
import random

from propstage.condition import ConditionSpec, ScriptedOracle
from propstage.core import ChartSpec, DataSeries, Rect, Vec3, VisCommand
from propstage.events import (
    KIND_CONDITION_CLEARED,
    KIND_CONDITION_MET,
    KIND_OBJECT_APPEARED,
    KIND_POINT_AT_OBJECT,
)
from propstage.formats import canonical_dumps
from propstage.scene import (
    EFFECT_RESTORE_CHART,
    EFFECT_SHOW_ANNOTATION,
    EFFECT_SHOW_CHART,
    EFFECT_SWAP_CHART,
    EFFECT_UNBOUND_OBJECT,
    Annotation,
    Binding,
    Presentation,
    SceneConfig,
)
from propstage.session import Session
from propstage.tracking import Detection, Hand, TrackFrame

FPS = 30.0

WINE = ChartSpec(
    "bar", "Wine by year", "wine",
    (DataSeries("Australian wine", (("2020", 5.0), ("2021", 8.0))),),
)
RESERVE = ChartSpec(
    "bar", "Reserve wines", "wine",
    (DataSeries("Chilean wine", (("2020", 3.0), ("2021", 4.0))),),
)


def det(bx=600.0, by=400.0, x=0.0, y=0.0, z=0.7, label="bottle"):
    return Detection(
        class_label=label, bbox=Rect(bx, by, 40.0, 80.0),
        position=Vec3(x, y, z),
    )


def frame(fi, dets=(), hands=()):
    return TrackFrame(
        timestamp=fi / FPS, frame_index=fi,
        detections=tuple(dets), hands=tuple(hands),
    )


def build(scene_count=1, annotation=None, conditions=()):
    bind = Binding(
        "bottle", 1, WINE, series_name="Australian wine", annotation=annotation,
    )
    scenes = tuple(
        SceneConfig(
            name=f"flight-{i + 1}",
            enabled_commands=frozenset(VisCommand),
            bindings=(bind,),
            conditions=tuple(conditions),
        )
        for i in range(scene_count)
    )
    return Presentation(scenes=scenes)


def kinds(out):
    return [e.kind for e in out.events]


def test_first_frame_appears_places_and_renders():
    session = Session(build())
    out = session.process_frame(frame(0, [det()]))

    assert kinds(out) == [KIND_OBJECT_APPEARED]
    assert [fx.kind for fx in out.effects] == [EFFECT_SHOW_CHART]
    # event records narrate events before their effects
    assert [r["type"] for r in out.event_records] == ["event", "effect"]

    render = out.render_rec
    assert render["type"] == "render"
    assert render["frameIndex"] == 0
    assert len(render["placements"]) == 1
    placed = render["placements"][0]
    assert placed["visId"] == 1
    assert placed["objectIds"] == [1]
    assert placed["chart"]["title"] == "Wine by year"
    assert render["panel"]["sceneIndex"] == 0
    diag = render["diagnostics"]
    assert diag["trackCount"] == 1 and diag["births"] == 1
    assert diag["paused"] is False


def test_pause_freezes_narration_and_layout_but_not_tracking():
    session = Session(build())
    outs = {}
    for fi in range(5):
        outs[fi] = session.process_frame(frame(fi, [det()]))
    frozen = canonical_dumps({"p": outs[4].render_rec["placements"]})

    session.queue_control({"type": "control", "cmd": "Pause"})
    for fi in range(5, 10):
        dets = [det(bx=600.0 + 8.0 * (fi - 4), x=0.02 * (fi - 4))]
        if fi >= 6:
            dets.append(det(bx=300.0, by=350.0, x=-0.6))
        out = session.process_frame(frame(fi, dets))
        assert out.events == () and out.effects == ()
        assert canonical_dumps({"p": out.render_rec["placements"]}) == frozen
        assert out.render_rec["diagnostics"]["paused"] is True
        if fi >= 6:
            # the tracker keeps following the table even while paused
            assert out.render_rec["diagnostics"]["trackCount"] == 2
    # only the queued control itself was echoed during the pause
    assert outs is not None

    session.queue_control({"type": "control", "cmd": "Resume"})
    resumed = session.process_frame(
        frame(10, [det(bx=648.0, x=0.12), det(bx=300.0, by=350.0, x=-0.6)]),
    )
    assert KIND_OBJECT_APPEARED in kinds(resumed)
    appeared = [e for e in resumed.events if e.kind == KIND_OBJECT_APPEARED]
    assert [e.object_id for e in appeared] == [2]
    # the second bottle has no binding in this scene
    assert [fx.kind for fx in resumed.effects if fx.object_id == 2] == [EFFECT_UNBOUND_OBJECT]
    assert canonical_dumps({"p": resumed.render_rec["placements"]}) != frozen
    assert resumed.render_rec["diagnostics"]["paused"] is False


def test_pause_echo_is_the_only_record_emitted_while_frozen():
    session = Session(build())
    session.process_frame(frame(0, [det()]))
    session.queue_control({"type": "control", "cmd": "Pause"})
    out = session.process_frame(frame(1, [det()]))
    assert list(out.event_records) == [{"type": "control", "cmd": "Pause"}]


def test_session_can_start_paused():
    session = Session(build())
    session.queue_control({"type": "control", "cmd": "Pause"})
    out0 = session.process_frame(frame(0, [det()]))
    assert out0.events == ()
    assert out0.render_rec["placements"] == []
    assert out0.render_rec["diagnostics"]["trackCount"] == 1

    session.queue_control({"type": "control", "cmd": "Resume"})
    out1 = session.process_frame(frame(1, [det()]))
    assert kinds(out1) == [KIND_OBJECT_APPEARED]
    assert len(out1.render_rec["placements"]) == 1


def test_scene_next_resets_and_reannounces():
    session = Session(build(scene_count=2))
    first = session.process_frame(frame(0, [det()]))
    for fi in (1, 2):
        session.process_frame(frame(fi, [det()]))

    session.queue_control({"type": "control", "cmd": "SceneNext"})
    out = session.process_frame(frame(3, [det()]))

    # echo first, then the re-announcement, then its effect
    assert out.event_records[0] == {"type": "control", "cmd": "SceneNext"}
    assert [r["type"] for r in out.event_records] == ["control", "event", "effect"]
    assert kinds(out) == [KIND_OBJECT_APPEARED]
    assert out.effects[0].kind == EFFECT_SHOW_CHART
    assert out.effects[0].vis_id == 2   # instance ids survive the reset
    assert out.render_rec["panel"]["sceneIndex"] == 1

    # placement history was cleared too: the fresh scene lays out exactly
    # like the very first frame did
    assert out.render_rec["placements"][0]["rect"] == first.render_rec["placements"][0]["rect"]


def test_scene_prev_then_next_round_trips_like_fresh_entry():
    session = Session(build(scene_count=2))
    session.process_frame(frame(0, [det()]))
    session.queue_control({"type": "control", "cmd": "SceneNext"})
    session.process_frame(frame(1, [det()]))
    session.queue_control({"type": "control", "cmd": "ScenePrev"})
    out = session.process_frame(frame(2, [det()]))
    assert session.controller.index == 0
    assert kinds(out) == [KIND_OBJECT_APPEARED]
    assert out.effects[0].chart_title == "Wine by year"


def test_set_pointing_hand_takes_effect_at_the_next_frame():
    """Switching the pointing hand is two-phase: the control is queued, then
    applied at the following frame start, so the dwell clock for the newly
    enabled hand starts counting only from that frame."""
    session = Session(build(annotation=Annotation(text="Barossa, 2019")))
    left = Hand(side="left", index_tip=(620.0, 440.0))

    fired = []
    for fi in range(21):
        out = session.process_frame(frame(fi, [det()], hands=[left]))
        fired.extend(e for e in out.events if e.kind == KIND_POINT_AT_OBJECT)
    assert fired == []   # the default pointing hand is the right one

    session.queue_control({"type": "control", "cmd": "SetPointingHand", "hand": "left"})
    for fi in range(21, 55):
        out = session.process_frame(frame(fi, [det()], hands=[left]))
        fired.extend(e for e in out.events if e.kind == KIND_POINT_AT_OBJECT)
    # dwell runs from frame 21 (0.7 s), so one second of pointing lands at
    # frame 51 (1.7 s) and not a frame earlier
    assert [e.frame_index for e in fired] == [51]


def test_annotation_card_freezes_during_pause_and_catches_up_after():
    session = Session(build(annotation=Annotation(text="Barossa, 2019")))
    right = Hand(side="right", index_tip=(620.0, 440.0))

    out30 = None
    for fi in range(35):
        out = session.process_frame(frame(fi, [det()], hands=[right]))
        if any(e.kind == KIND_POINT_AT_OBJECT for e in out.events):
            out30 = out
    assert out30 is not None and out30.frame_index == 30
    assert [fx.kind for fx in out30.effects] == [EFFECT_SHOW_ANNOTATION]
    card = out30.render_rec["annotations"][0]
    assert card["objectId"] == 1 and card["text"] == "Barossa, 2019"

    last = session.process_frame(frame(35, [det()], hands=[right]))
    frozen = canonical_dumps({"a": last.render_rec["annotations"]})
    session.queue_control({"type": "control", "cmd": "Pause"})
    for fi in range(36, 40):
        out = session.process_frame(frame(fi, [det(bx=700.0)], hands=[right]))
        assert canonical_dumps({"a": out.render_rec["annotations"]}) == frozen

    session.queue_control({"type": "control", "cmd": "Resume"})
    moved = session.process_frame(frame(40, [det(bx=700.0)], hands=[right]))
    assert canonical_dumps({"a": moved.render_rec["annotations"]}) != frozen


def test_queued_oracle_flip_drives_swap_and_restore():
    red = ConditionSpec(
        condition_id="c-red",
        prompt="Is the glass filled with red wine?",
        poll_interval_seconds=0.1,
        debounce_count=1,
        swap_charts=(("bottle#1", RESERVE),),
    )
    session = Session(build(conditions=(red,)), oracle=ScriptedOracle())

    timeline = []
    for fi in range(6):
        timeline.append(session.process_frame(frame(fi, [det()])))
    session.queue_oracle_flip({"type": "oracle", "conditionId": "c-red", "answer": 1})
    for fi in range(6, 16):
        timeline.append(session.process_frame(frame(fi, [det()])))
    session.queue_oracle_flip({"type": "oracle", "conditionId": "c-red", "answer": 0})
    for fi in range(16, 30):
        timeline.append(session.process_frame(frame(fi, [det()])))

    events = [e for out in timeline for e in out.events]
    effects = [fx for out in timeline for fx in out.effects]
    met = [e for e in events if e.kind == KIND_CONDITION_MET]
    cleared = [e for e in events if e.kind == KIND_CONDITION_CLEARED]
    assert len(met) == 1 and len(cleared) == 1
    assert 6 <= met[0].frame_index <= 10
    assert cleared[0].frame_index > met[0].frame_index

    swaps = [fx.kind for fx in effects if fx.kind in (EFFECT_SWAP_CHART, EFFECT_RESTORE_CHART)]
    assert swaps == [EFFECT_SWAP_CHART, EFFECT_RESTORE_CHART]
    titles = [fx.chart_title for fx in effects if fx.kind == EFFECT_SWAP_CHART]
    assert titles == ["Reserve wines"]


def drive_scripted_session():
    """A deterministic 40-frame run with one pause window and one scene
    change; returns every emitted record in canonical form."""
    rng = random.Random(7)
    session = Session(build(scene_count=2))
    lines = []
    for fi in range(40):
        if fi == 12:
            session.queue_control({"type": "control", "cmd": "Pause"})
        if fi == 18:
            session.queue_control({"type": "control", "cmd": "Resume"})
        if fi == 25:
            session.queue_control({"type": "control", "cmd": "SceneNext"})
        jitter = rng.uniform(-2.0, 2.0)
        out = session.process_frame(frame(fi, [det(bx=600.0 + jitter)]))
        lines.extend(canonical_dumps(r) for r in out.event_records)
        lines.append(canonical_dumps(out.render_rec))
    return lines


def test_identical_input_reproduces_identical_logs():
    assert drive_scripted_session() == drive_scripted_session()
