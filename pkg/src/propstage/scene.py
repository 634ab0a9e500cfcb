"""Scenes: bindings from physical objects to charts, command masks, and the
mapping from manipulation events to visualization state changes.

A presentation is an ordered list of scenes.  Each scene enables a subset of
the command vocabulary (events whose command is masked dispatch to a no-op),
binds (classLabel, instanceOrdinal) pairs to charts/annotations, registers
conditions, and optionally parametrizes composites.  Scene transitions reset
the runtime: objects still on the table re-announce themselves on the next
frame, exactly as on a fresh entry.
"""
from __future__ import annotations

from dataclasses import dataclass

from .charts import VisInstance, apply_swap, compose, decompose
from .condition import ConditionSpec
from .core import ChartSpec, ObjectId, VisCommand
from .events import (
    KIND_CONDITION_CLEARED,
    KIND_CONDITION_MET,
    KIND_DISTANCE_BAND_CHANGED,
    KIND_LIFTED,
    KIND_LOWERED,
    KIND_OBJECT_APPEARED,
    KIND_OBJECT_HIDDEN,
    KIND_POINT_AT_OBJECT,
    KIND_POINT_AT_VIS,
    KIND_POINT_DWELL_END,
    KIND_PROXIMITY_JOIN,
    KIND_PROXIMITY_SPLIT,
    BAND_NEAR,
    BAND_NORMAL,
    EventParams,
    ManipulationEvent,
)
from .layout import LayoutWeights
from .tracking import TrackParams

# Which command gates each event kind (docs/schema.md).  DistanceBandChanged
# drives hierarchical navigation; its far transition is a no-op here because
# the visibility automaton already hides far objects.
COMMAND_FOR_KIND = {
    KIND_OBJECT_APPEARED: VisCommand.SHOW_HIDE,
    KIND_OBJECT_HIDDEN: VisCommand.SHOW_HIDE,
    KIND_LIFTED: VisCommand.SELECT_DATA_SERIES,
    KIND_LOWERED: VisCommand.SELECT_DATA_SERIES,
    KIND_PROXIMITY_JOIN: VisCommand.COMPOSE_DECOMPOSE,
    KIND_PROXIMITY_SPLIT: VisCommand.COMPOSE_DECOMPOSE,
    KIND_POINT_AT_OBJECT: VisCommand.ANNOTATION,
    KIND_POINT_DWELL_END: VisCommand.ANNOTATION,
    KIND_POINT_AT_VIS: VisCommand.SELECT_DATA_POINT,
    KIND_DISTANCE_BAND_CHANGED: VisCommand.HIERARCHICAL_NAVIGATION,
    KIND_CONDITION_MET: VisCommand.CHANGE_DATA_SOURCE,
    KIND_CONDITION_CLEARED: VisCommand.CHANGE_DATA_SOURCE,
}

EFFECT_SHOW_CHART = "ShowChart"
EFFECT_HIDE_CHART = "HideChart"
EFFECT_SHOW_COMPOSITE = "ShowComposite"
EFFECT_HIDE_COMPOSITE = "HideComposite"
EFFECT_SELECT_SERIES = "SelectSeries"
EFFECT_DESELECT_SERIES = "DeselectSeries"
EFFECT_SELECT_POINT = "SelectPoint"
EFFECT_DESELECT_POINT = "DeselectPoint"
EFFECT_SHOW_ANNOTATION = "ShowAnnotation"
EFFECT_HIDE_ANNOTATION = "HideAnnotation"
EFFECT_SWAP_CHART = "SwapChart"
EFFECT_RESTORE_CHART = "RestoreChart"
EFFECT_ENTER_DETAIL = "EnterDetail"
EFFECT_EXIT_DETAIL = "ExitDetail"
EFFECT_UNBOUND_OBJECT = "UnboundObject"


@dataclass(frozen=True)
class VisEffect:
    """One observable consequence of dispatching an event; these narrate the
    event log and drive tests."""

    kind: str
    vis_id: int | None = None
    object_id: ObjectId | None = None
    other_id: ObjectId | None = None
    series_name: str | None = None
    category: str | None = None
    chart_title: str | None = None
    composition: str | None = None
    condition_id: str | None = None


@dataclass(frozen=True)
class Annotation:
    image_ref: str | None = None
    text: str | None = None


@dataclass(frozen=True)
class Binding:
    class_label: str
    instance_ordinal: int
    chart: ChartSpec
    series_name: str | None = None      # series selected when lifted
    annotation: Annotation | None = None

    @property
    def key(self) -> str:
        return f"{self.class_label}#{self.instance_ordinal}"


@dataclass(frozen=True)
class SceneConfig:
    name: str
    enabled_commands: frozenset = frozenset()
    bindings: tuple = ()                # tuple[Binding, ...]
    conditions: tuple = ()              # tuple[ConditionSpec, ...]
    # mode ("horizontal" | "vertical" | "overlay") -> {"title": ...}
    composition_registry: tuple = ()    # ((mode, {params}), ...)

    def registry_params(self, mode: str) -> dict:
        for m, params in self.composition_registry:
            if m == mode:
                return params
        return {}


@dataclass(frozen=True)
class EngineParams:
    """Sizes/scaling knobs that belong to the engine rather than any single
    detector."""

    vis_base_size: tuple = (240.0, 180.0)
    annotation_size: tuple = (200.0, 90.0)
    ref_distance: float = 0.7
    scale_min: float = 0.5
    scale_max: float = 2.5
    fps: float = 30.0


@dataclass(frozen=True)
class Presentation:
    scenes: tuple                        # tuple[SceneConfig, ...]
    track_params: TrackParams = TrackParams()
    event_params: EventParams = EventParams()
    layout_weights: LayoutWeights = LayoutWeights()
    engine: EngineParams = EngineParams()


def resolve_binding(track, scene: SceneConfig):
    """Match by class label and per-class instance ordinal; None when the
    scene says nothing about this object."""
    for b in scene.bindings:
        if b.class_label == track.class_label and b.instance_ordinal == track.instance_ordinal:
            return b
    return None


def build_panel(presentation: Presentation, index: int) -> dict:
    """Presenter panel summary; pure function of the scene config, cheap to
    recompute every frame."""
    scene = presentation.scenes[index]
    return {
        "sceneName": scene.name,
        "sceneIndex": index,
        "sceneCount": len(presentation.scenes),
        "objectToChart": [[b.key, b.chart.title] for b in scene.bindings],
        "activeCommands": sorted(c.value for c in scene.enabled_commands),
        "registeredSwaps": [
            [c.prompt, chart.title]
            for c in scene.conditions
            for _, chart in c.swap_charts
        ],
    }


class SceneRuntime:
    """Mutable per-scene visualization state."""

    def __init__(self):
        self.visible_vis: dict = {}        # ObjectId -> VisInstance
        self.composites: dict = {}         # (a, b) -> VisInstance
        self.active_annotation: ObjectId | None = None
        self.detail_original: dict = {}    # vis_id -> pre-detail ChartSpec
        self.swap_original: dict = {}      # vis_id -> pre-swap ChartSpec
        self.active_swaps: dict = {}       # binding key -> ChartSpec

    def all_instances(self) -> list:
        """Every on-screen chart, ascending vis_id."""
        items = list(self.visible_vis.values()) + list(self.composites.values())
        items.sort(key=lambda v: v.vis_id)
        return items

    def find_vis(self, vis_id: int):
        for v in self.all_instances():
            if v.vis_id == vis_id:
                return v
        return None

    def composite_with_member(self, object_id: ObjectId):
        for key in sorted(self.composites):
            if object_id in key:
                return key
        return None


class SceneController:
    """Owns the current scene index, the runtime, and event dispatch."""

    def __init__(self, presentation: Presentation):
        self.presentation = presentation
        self.index = 0
        self.runtime = SceneRuntime()
        self._next_vis_id = 1   # never reused, survives scene changes

    @property
    def scene(self) -> SceneConfig:
        return self.presentation.scenes[self.index]

    def advance_scene(self, delta: int) -> int:
        """Clamped transition (no wraparound); the runtime always resets,
        even when the index does not move."""
        self.index = max(0, min(len(self.presentation.scenes) - 1, self.index + delta))
        self.runtime = SceneRuntime()
        return self.index

    def panel(self) -> dict:
        return build_panel(self.presentation, self.index)

    def pair_composable(self, track_a, track_b) -> bool:
        ba = resolve_binding(track_a, self.scene)
        bb = resolve_binding(track_b, self.scene)
        if ba is None or bb is None:
            return False
        return ba.chart.chart_type == bb.chart.chart_type

    def _take_vis_id(self) -> int:
        vid = self._next_vis_id
        self._next_vis_id += 1
        return vid

    # -- dispatch ------------------------------------------------------------

    def dispatch(self, event: ManipulationEvent, tracks_by_id: dict) -> list:
        """Apply one event to the runtime; returns the effects.  Masked
        commands are a total no-op for every event kind."""
        cmd = COMMAND_FOR_KIND[event.kind]
        if cmd not in self.scene.enabled_commands:
            return []
        handler = {
            KIND_OBJECT_APPEARED: self._on_appeared,
            KIND_OBJECT_HIDDEN: self._on_hidden,
            KIND_LIFTED: self._on_lifted,
            KIND_LOWERED: self._on_lowered,
            KIND_PROXIMITY_JOIN: self._on_join,
            KIND_PROXIMITY_SPLIT: self._on_split,
            KIND_POINT_AT_OBJECT: self._on_point_object,
            KIND_POINT_AT_VIS: self._on_point_vis,
            KIND_POINT_DWELL_END: self._on_dwell_end,
            KIND_DISTANCE_BAND_CHANGED: self._on_band,
            KIND_CONDITION_MET: self._on_condition_met,
            KIND_CONDITION_CLEARED: self._on_condition_cleared,
        }[event.kind]
        return handler(event, tracks_by_id)

    def _on_appeared(self, ev, tracks):
        t = tracks.get(ev.object_id)
        if t is None:
            return []
        b = resolve_binding(t, self.scene)
        if b is None:
            return [VisEffect(EFFECT_UNBOUND_OBJECT, object_id=ev.object_id)]
        if ev.object_id in self.runtime.visible_vis:
            return []
        spec = self.runtime.active_swaps.get(b.key, b.chart)
        vis = VisInstance(self._take_vis_id(), spec, anchor=ev.object_id)
        if b.key in self.runtime.active_swaps:
            self.runtime.swap_original[vis.vis_id] = b.chart
        self.runtime.visible_vis[ev.object_id] = vis
        return [VisEffect(
            EFFECT_SHOW_CHART,
            vis_id=vis.vis_id,
            object_id=ev.object_id,
            chart_title=spec.title,
        )]

    def _on_hidden(self, ev, tracks):
        rt = self.runtime
        out = []
        oid = ev.object_id
        v = rt.visible_vis.pop(oid, None)
        if v is not None:
            rt.detail_original.pop(v.vis_id, None)
            rt.swap_original.pop(v.vis_id, None)
            out.append(VisEffect(EFFECT_HIDE_CHART, vis_id=v.vis_id, object_id=oid))
        ckey = rt.composite_with_member(oid)
        if ckey is not None:
            comp = rt.composites.pop(ckey)
            out.append(VisEffect(
                EFFECT_HIDE_COMPOSITE, vis_id=comp.vis_id,
                object_id=ckey[0], other_id=ckey[1],
            ))
            for m in decompose(comp):
                if m.anchor != oid:
                    rt.visible_vis[m.anchor] = m
                    out.append(VisEffect(
                        EFFECT_SHOW_CHART, vis_id=m.vis_id,
                        object_id=m.anchor, chart_title=m.spec.title,
                    ))
        if rt.active_annotation == oid:
            rt.active_annotation = None
            out.append(VisEffect(EFFECT_HIDE_ANNOTATION, object_id=oid))
        return out

    def _owning_vis(self, object_id):
        """The instance that renders this object's data right now: its
        singleton, or the composite it joined."""
        v = self.runtime.visible_vis.get(object_id)
        if v is not None:
            return v
        ckey = self.runtime.composite_with_member(object_id)
        if ckey is not None:
            return self.runtime.composites[ckey]
        return None

    def _on_lifted(self, ev, tracks):
        t = tracks.get(ev.object_id)
        if t is None:
            return []
        b = resolve_binding(t, self.scene)
        if b is None or b.series_name is None:
            return []
        v = self._owning_vis(ev.object_id)
        if v is None or v.spec.series_named(b.series_name) is None:
            return []
        if b.series_name in v.highlight_series:
            return []
        v.highlight_series = frozenset(v.highlight_series | {b.series_name})
        return [VisEffect(
            EFFECT_SELECT_SERIES, vis_id=v.vis_id,
            object_id=ev.object_id, series_name=b.series_name,
        )]

    def _on_lowered(self, ev, tracks):
        t = tracks.get(ev.object_id)
        if t is None:
            return []
        b = resolve_binding(t, self.scene)
        if b is None or b.series_name is None:
            return []
        v = self._owning_vis(ev.object_id)
        if v is None or b.series_name not in v.highlight_series:
            return []
        v.highlight_series = frozenset(v.highlight_series - {b.series_name})
        return [VisEffect(
            EFFECT_DESELECT_SERIES, vis_id=v.vis_id,
            object_id=ev.object_id, series_name=b.series_name,
        )]

    def _on_join(self, ev, tracks):
        rt = self.runtime
        a, b = ev.object_id, ev.other_id
        va = rt.visible_vis.get(a)
        vb = rt.visible_vis.get(b)
        if va is None or vb is None or (a, b) in rt.composites:
            return []
        if va.spec.chart_type != vb.spec.chart_type:
            return []
        if va.spec.chart_type == "bar":
            mode = "vertical" if ev.orientation == "vertical" else "horizontal"
        else:
            mode = "overlay"
        params = self.scene.registry_params(mode)
        comp = compose(va, vb, ev.orientation, self._take_vis_id(),
                       title=params.get("title"))
        del rt.visible_vis[a]
        del rt.visible_vis[b]
        rt.composites[(a, b)] = comp
        return [VisEffect(
            EFFECT_SHOW_COMPOSITE,
            vis_id=comp.vis_id,
            object_id=a,
            other_id=b,
            chart_title=comp.spec.title,
            composition=comp.composition,
        )]

    def _on_split(self, ev, tracks):
        rt = self.runtime
        comp = rt.composites.pop((ev.object_id, ev.other_id), None)
        if comp is None:
            return []  # already dissolved (e.g. a member hid this frame)
        out = [VisEffect(
            EFFECT_HIDE_COMPOSITE, vis_id=comp.vis_id,
            object_id=ev.object_id, other_id=ev.other_id,
        )]
        for m in decompose(comp):
            rt.visible_vis[m.anchor] = m
            out.append(VisEffect(
                EFFECT_SHOW_CHART, vis_id=m.vis_id,
                object_id=m.anchor, chart_title=m.spec.title,
            ))
        return out

    def _on_point_object(self, ev, tracks):
        t = tracks.get(ev.object_id)
        if t is None:
            return []
        b = resolve_binding(t, self.scene)
        if b is None:
            return [VisEffect(EFFECT_UNBOUND_OBJECT, object_id=ev.object_id)]
        if b.annotation is None:
            return []
        self.runtime.active_annotation = ev.object_id
        return [VisEffect(EFFECT_SHOW_ANNOTATION, object_id=ev.object_id)]

    def _on_dwell_end(self, ev, tracks):
        if self.runtime.active_annotation is None:
            return []
        oid = self.runtime.active_annotation
        self.runtime.active_annotation = None
        return [VisEffect(EFFECT_HIDE_ANNOTATION, object_id=oid)]

    def _on_point_vis(self, ev, tracks):
        v = self.runtime.find_vis(ev.vis_id)
        if v is None:
            return []
        key = (ev.series_name, ev.category)
        if key in v.highlight_points:
            v.highlight_points = frozenset(v.highlight_points - {key})
            kind = EFFECT_DESELECT_POINT
        else:
            v.highlight_points = frozenset(v.highlight_points | {key})
            kind = EFFECT_SELECT_POINT
        return [VisEffect(
            kind, vis_id=v.vis_id,
            series_name=ev.series_name, category=ev.category,
        )]

    def _on_band(self, ev, tracks):
        rt = self.runtime
        oid = ev.object_id
        v = rt.visible_vis.get(oid)
        if ev.band == BAND_NEAR:
            if v is None or v.spec.detail_variant is None:
                return []
            if v.vis_id in rt.detail_original:
                return []
            rt.detail_original[v.vis_id] = v.spec
            rt.visible_vis[oid] = apply_swap(v, v.spec.detail_variant)
            return [VisEffect(
                EFFECT_ENTER_DETAIL, vis_id=v.vis_id, object_id=oid,
                chart_title=v.spec.detail_variant.title,
            )]
        if ev.band == BAND_NORMAL:
            if v is None or v.vis_id not in rt.detail_original:
                return []
            original = rt.detail_original.pop(v.vis_id)
            rt.visible_vis[oid] = apply_swap(v, original)
            return [VisEffect(
                EFFECT_EXIT_DETAIL, vis_id=v.vis_id, object_id=oid,
                chart_title=original.title,
            )]
        return []  # far: the visibility automaton owns hiding

    def _condition_spec(self, condition_id):
        for c in self.scene.conditions:
            if c.condition_id == condition_id:
                return c
        return None

    def _vis_for_binding_key(self, bkey: str, tracks):
        for oid in sorted(self.runtime.visible_vis):
            t = tracks.get(oid)
            if t is None:
                continue
            b = resolve_binding(t, self.scene)
            if b is not None and b.key == bkey:
                return oid, self.runtime.visible_vis[oid]
        return None, None

    def _on_condition_met(self, ev, tracks):
        spec = self._condition_spec(ev.condition_id)
        if spec is None:
            return []
        out = []
        for bkey, chart in spec.swap_charts:
            self.runtime.active_swaps[bkey] = chart
            oid, v = self._vis_for_binding_key(bkey, tracks)
            if v is None:
                continue
            if v.vis_id not in self.runtime.swap_original:
                self.runtime.swap_original[v.vis_id] = v.spec
            self.runtime.visible_vis[oid] = apply_swap(v, chart)
            out.append(VisEffect(
                EFFECT_SWAP_CHART, vis_id=v.vis_id, object_id=oid,
                chart_title=chart.title, condition_id=ev.condition_id,
            ))
        return out

    def _on_condition_cleared(self, ev, tracks):
        spec = self._condition_spec(ev.condition_id)
        if spec is None:
            return []
        out = []
        for bkey, _chart in spec.swap_charts:
            self.runtime.active_swaps.pop(bkey, None)
            oid, v = self._vis_for_binding_key(bkey, tracks)
            if v is None or v.vis_id not in self.runtime.swap_original:
                continue
            original = self.runtime.swap_original.pop(v.vis_id)
            self.runtime.visible_vis[oid] = apply_swap(v, original)
            out.append(VisEffect(
                EFFECT_RESTORE_CHART, vis_id=v.vis_id, object_id=oid,
                chart_title=original.title, condition_id=ev.condition_id,
            ))
        return out
