"""The per-session pipeline: track frames in, event/render records out.

Frame order is fixed and fully deterministic:

  1. queued control / oracle-flip records apply (and echo into the event log);
  2. the tracker associates detections (always, even while paused);
  3. oracle answers that completed by now are drained, then due polls issue;
  4. the manipulation detector runs against last frame's placements;
  5. merged events dispatch to the scene controller;
  6. chart scale, greedy placement, smoothing and mark geometry update.

While paused, steps 3-6 freeze: frames are accepted and tracked, but no
events fire and placements re-emit unchanged.  Replaying a recorded inbound
message log therefore reproduces a live session's output logs byte for byte.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .charts import mark_rects, scale_for_distance
from .condition import ConditionEngine
from .events import EventDetector, VisPlacementView, sort_events
from .formats import annotation_entry, effect_record, event_record, placement_entry, render_record
from .layout import LayoutScene, clamp_rect, composite_anchor_rect, place, smooth
from .scene import SceneController, resolve_binding
from .core import VisCommand
from .tracking import Tracker, TrackFrame


@dataclass(frozen=True)
class FrameOutput:
    """Everything one frame produced."""

    frame_index: int
    timestamp: float
    events: tuple = ()          # ManipulationEvent, canonical order
    effects: tuple = ()         # VisEffect, dispatch order
    event_records: tuple = ()   # echoed controls/flips + events + effects
    render_rec: dict = field(default_factory=dict)


class Session:
    """One presenter session: owns the tracker, detector, scene controller,
    condition engine and smoothing memory.

    ``oracle`` may be a ScriptedOracle, a RemoteOracleClient, or None (all
    conditions inert).  Inline oracle-flip records require a scripted oracle;
    with any other oracle they are ignored.
    """

    def __init__(self, presentation, oracle=None):
        self.presentation = presentation
        self.oracle = oracle
        self.tracker = Tracker(presentation.track_params)
        self.detector = EventDetector(presentation.event_params)
        self.controller = SceneController(presentation)
        self.paused = False
        self._inbox: list = []        # queued ("control"|"oracle", record) pairs
        self._prev_rects: dict = {}   # layout key -> last final Rect
        self._annotation_rect = None
        self._annotation_binding = None
        self._dropped_base = 0        # dropped ticks of previous scenes' engines
        self._engine = self._build_engine()

    def _build_engine(self) -> ConditionEngine | None:
        specs = self.controller.scene.conditions
        if self.oracle is None or not specs:
            return None
        return ConditionEngine(specs, self.oracle)

    @property
    def dropped_oracle_ticks(self) -> int:
        live = self._engine.dropped_ticks if self._engine else 0
        return self._dropped_base + live

    # -- inbound records -----------------------------------------------------

    def queue_control(self, rec: dict) -> None:
        """A validated control record; applies at the next frame start."""
        self._inbox.append(("control", rec))

    def queue_oracle_flip(self, rec: dict) -> None:
        """A validated oracle record; flips the scripted oracle's answer at
        the next frame's timestamp."""
        self._inbox.append(("oracle", rec))

    def _apply_control(self, rec: dict) -> None:
        cmd = rec["cmd"]
        if cmd in ("SceneNext", "ScenePrev"):
            self.controller.advance_scene(1 if cmd == "SceneNext" else -1)
            self.detector.reset()
            self._prev_rects = {}
            if self._engine is not None:
                self._dropped_base += self._engine.dropped_ticks
            self._engine = self._build_engine()
        elif cmd == "Pause":
            self.paused = True
        elif cmd == "Resume":
            self.paused = False
        elif cmd == "SetPointingHand":
            self.detector.params = replace(self.detector.params, pointing_hand=rec["hand"])

    def _apply_oracle_flip(self, rec: dict, at_time: float) -> None:
        if hasattr(self.oracle, "add_flip"):
            self.oracle.add_flip(rec["conditionId"], at_time, rec["answer"])

    # -- the frame pipeline ----------------------------------------------------

    def process_frame(self, tf: TrackFrame) -> FrameOutput:
        echoes = []
        for rtype, rec in self._inbox:
            if rtype == "control":
                self._apply_control(rec)
            else:
                self._apply_oracle_flip(rec, tf.timestamp)
            echoes.append(dict(rec))
        self._inbox = []

        assoc = self.tracker.step(tf)
        tracks_by_id = {t.id: t for t in assoc.tracks}

        events: list = []
        effects: list = []
        if not self.paused:
            placement_views = [
                VisPlacementView(v.vis_id, v.placed_rect, v.mark_rects)
                for v in self.controller.runtime.all_instances()
                if v.placed_rect is not None
            ]
            now = tf.timestamp
            if self._engine is not None:
                events.extend(self._engine.drain(now, tf.frame_index, tf.timestamp))
                self._engine.poll_tick(now, f"frame:{tf.frame_index}", tf.frame_index)
            events.extend(self.detector.step(
                assoc.tracks, tf.hands, placement_views, now, tf.frame_index,
                self.controller.pair_composable,
            ))
            events = sort_events(events)
            for ev in events:
                effects.extend(self.controller.dispatch(ev, tracks_by_id))
            self._update_placements(tf, tracks_by_id)

        render = self._render_record(tf, assoc, events, effects)
        records = (
            echoes
            + [event_record(e) for e in events]
            + [effect_record(fx, tf.frame_index, tf.timestamp) for fx in effects]
        )
        return FrameOutput(
            frame_index=tf.frame_index,
            timestamp=tf.timestamp,
            events=tuple(events),
            effects=tuple(effects),
            event_records=tuple(records),
            render_rec=render,
        )

    # -- placement ----------------------------------------------------------

    def _anchor_rect(self, vis, tracks_by_id):
        if vis.is_composite:
            boxes = [tracks_by_id[oid].bbox for oid in vis.anchor if oid in tracks_by_id]
            if len(boxes) != len(vis.anchor):
                return None
            return composite_anchor_rect(boxes)
        t = tracks_by_id.get(vis.anchor)
        return t.bbox if t is not None else None

    def _vis_scale(self, vis, tracks_by_id) -> float:
        eng = self.presentation.engine
        ids = list(vis.anchor) if vis.is_composite else [vis.anchor]
        dists = [tracks_by_id[oid].camera_distance for oid in ids if oid in tracks_by_id]
        if not dists:
            return vis.scale
        return scale_for_distance(
            sum(dists) / len(dists), eng.ref_distance, eng.scale_min, eng.scale_max,
        )

    def _update_placements(self, tf: TrackFrame, tracks_by_id: dict) -> None:
        rt = self.controller.runtime
        eng = self.presentation.engine
        weights = self.presentation.layout_weights
        scale_on = VisCommand.SCALE in self.controller.scene.enabled_commands

        items = []
        vis_by_key = {}
        for v in rt.all_instances():
            anchor = self._anchor_rect(v, tracks_by_id)
            if anchor is None:
                continue  # anchor track vanished mid-dispatch; keep last rect
            v.scale = self._vis_scale(v, tracks_by_id) if scale_on else 1.0
            key = f"vis:{v.vis_id}"
            vis_by_key[key] = v
            items.append((key, anchor,
                          (eng.vis_base_size[0] * v.scale, eng.vis_base_size[1] * v.scale)))

        ann_binding = None
        if rt.active_annotation is not None:
            t = tracks_by_id.get(rt.active_annotation)
            b = resolve_binding(t, self.controller.scene) if t is not None else None
            if b is not None and b.annotation is not None:
                ann_binding = b
                items.append((f"ann:{rt.active_annotation}", t.bbox, eng.annotation_size))

        scene_view = LayoutScene(
            frame_size=tf.frame_size,
            face_box=tf.face_box,
            object_boxes=tuple(t.bbox for t in sorted(tracks_by_id.values(), key=lambda t: t.id)),
            previous=self._prev_rects,
        )
        new_prev = {}
        self._annotation_rect = None
        self._annotation_binding = ann_binding
        for key, target in place(items, scene_view, weights):
            final = clamp_rect(
                smooth(self._prev_rects.get(key), target, weights.smoothing_alpha),
                tf.frame_size,
            )
            new_prev[key] = final
            if key.startswith("vis:"):
                v = vis_by_key[key]
                v.placed_rect = final
                v.mark_rects = mark_rects(v.spec, final, v.composition)
            else:
                self._annotation_rect = final
        self._prev_rects = new_prev

    # -- render record -----------------------------------------------------------

    def _render_record(self, tf, assoc, events, effects) -> dict:
        rt = self.controller.runtime
        placements = [
            placement_entry(v) for v in rt.all_instances() if v.placed_rect is not None
        ]
        annotations = []
        # the annotation card survives pauses frozen, like every placement
        if (rt.active_annotation is not None
                and self._annotation_rect is not None
                and self._annotation_binding is not None):
            annotations.append(annotation_entry(
                rt.active_annotation, self._annotation_rect,
                self._annotation_binding.annotation.image_ref,
                self._annotation_binding.annotation.text,
            ))
        diagnostics = {
            "trackCount": len(assoc.tracks),
            "births": len(assoc.births),
            "deaths": len(assoc.deaths),
            "events": len(events),
            "effects": len(effects),
            "droppedOracleTicks": self.dropped_oracle_ticks,
            "paused": self.paused,
        }
        return render_record(
            tf.frame_index, tf.timestamp, placements, annotations,
            self.controller.panel(), diagnostics,
        )


def replay_stream(presentation, stream, oracle=None):
    """Drive a Session over every record of a stream file.

    Returns (event_records, render_records, summary).  Truth records are
    ground truth for tests, not input; they are skipped.
    """
    session = Session(presentation, oracle)
    event_records: list = []
    render_records: list = []
    event_counts: dict = {}
    effect_counts: dict = {}
    frames = 0
    for rtype, payload in stream.records:
        if rtype == "control":
            session.queue_control(payload)
        elif rtype == "oracle":
            session.queue_oracle_flip(payload)
        elif rtype == "frame":
            out = session.process_frame(payload)
            frames += 1
            event_records.extend(out.event_records)
            render_records.append(out.render_rec)
            for e in out.events:
                event_counts[e.kind] = event_counts.get(e.kind, 0) + 1
            for fx in out.effects:
                effect_counts[fx.kind] = effect_counts.get(fx.kind, 0) + 1
    summary = {
        "frames": frames,
        "events": dict(sorted(event_counts.items())),
        "effects": dict(sorted(effect_counts.items())),
        "droppedOracleTicks": session.dropped_oracle_ticks,
        "finalSceneIndex": session.controller.index,
    }
    return event_records, render_records, summary
