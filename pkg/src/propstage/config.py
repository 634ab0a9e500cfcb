"""Presentation config files: loading, template extension, validation.

Configs are JSON.  A file may name a template via "extends"; the child is
deep-merged over the parent (objects merge key-wise, anything else replaces).
``validate_config`` works on the raw merged dict so every issue can point at
the offending field by path; ``build_presentation`` assumes a validated dict.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .condition import ConditionSpec, is_first_person_prompt
from .core import CHART_TYPES, COMMAND_NAMES, ChartSpec, DataSeries, VisCommand
from .events import EventParams
from .layout import LayoutWeights
from .scene import Annotation, Binding, EngineParams, Presentation, SceneConfig
from .tracking import TrackParams

SCHEMA_VERSION = 1

ERROR = "error"
WARNING = "warning"


class ConfigError(ValueError):
    """Raised when building a presentation from an invalid config."""


@dataclass(frozen=True)
class Issue:
    severity: str
    code: str
    path: str
    message: str

    def __str__(self):
        return f"{self.severity}: {self.code} at {self.path}: {self.message}"


def load_raw_config(path) -> dict:
    """Read a config file, resolving its "extends" chain (paths are relative
    to the file that names them)."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config root must be an object")
    seen = {os.path.abspath(path)}
    while isinstance(raw.get("extends"), str):
        base_path = os.path.normpath(
            os.path.join(os.path.dirname(os.path.abspath(path)), raw["extends"])
        )
        if base_path in seen:
            raise ConfigError(f"{path}: extends cycle via {base_path}")
        seen.add(base_path)
        with open(base_path, "r", encoding="utf-8") as fh:
            base = json.load(fh)
        if not isinstance(base, dict):
            raise ConfigError(f"{base_path}: config root must be an object")
        raw.pop("extends", None)
        raw = _deep_merge(base, raw)
        path = base_path  # a template may extend another template
    raw.pop("extends", None)
    return raw


def _deep_merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = v
    return out


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

_TOP_KEYS = ("schemaVersion", "extends", "description", "charts", "scenes",
             "trackParams", "eventParams", "layoutWeights", "engine")
_CHART_KEYS = ("chartType", "title", "sourceTag", "series", "detailVariant")
_SERIES_KEYS = ("name", "points")
_SCENE_KEYS = ("name", "enabledCommands", "bindings", "conditions",
               "compositionRegistry")
_BINDING_KEYS = ("classLabel", "instanceOrdinal", "chart", "seriesName",
                 "annotation")
_ANNOTATION_KEYS = ("imageRef", "text")
_CONDITION_KEYS = ("conditionId", "prompt", "pollIntervalSeconds",
                   "debounceCount", "latching", "swapCharts")
_SWAP_KEYS = ("binding", "chart")
_REGISTRY_MODES = ("horizontal", "vertical", "overlay")
_TRACK_KEYS = ("gateRadius", "trackLossFrames", "calibrationMinSamples")
_EVENT_KEYS = ("liftOnHeight", "liftOffHeight", "joinDistance", "splitDistance",
               "orientationCutoffDeg", "dwellSeconds", "nearBand", "farBand",
               "bandHysteresis", "stationaryEpsilon", "stationaryWindow",
               "snapRadius", "pointingHand")
_LAYOUT_KEYS = ("wFace", "wObject", "wVis", "wTop", "wPrev", "smoothingAlpha",
                "margin")
_ENGINE_KEYS = ("visBaseSize", "annotationSize", "refDistance", "scaleMin",
                "scaleMax", "fps")


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


class _Collector:
    def __init__(self):
        self.issues = []

    def error(self, code, path, message):
        self.issues.append(Issue(ERROR, code, path, message))

    def warn(self, code, path, message):
        self.issues.append(Issue(WARNING, code, path, message))

    def unknown_keys(self, d, allowed, path):
        for k in sorted(set(d) - set(allowed)):
            self.error("UnknownField", f"{path}.{k}", f"unknown field {k!r}")


def validate_config(raw: dict) -> list:
    """Every problem found in the raw (merged) config dict; errors make the
    config unusable, warnings do not."""
    c = _Collector()
    if not isinstance(raw, dict):
        c.error("BadRoot", "$", "config root must be an object")
        return c.issues
    c.unknown_keys(raw, _TOP_KEYS, "$")

    if raw.get("schemaVersion") != SCHEMA_VERSION:
        c.error("SchemaVersion", "schemaVersion",
                f"schemaVersion must be {SCHEMA_VERSION}")

    charts = raw.get("charts", {})
    if not isinstance(charts, dict):
        c.error("BadSection", "charts", "charts must be an object of chart defs")
        charts = {}
    for name in sorted(charts):
        _validate_chart(c, charts, name, f"charts.{name}")

    scenes = raw.get("scenes", [])
    if not isinstance(scenes, list) or not scenes:
        c.error("ScenesEmpty", "scenes", "scenes must be a non-empty list")
        scenes = []
    for i, scene in enumerate(scenes):
        _validate_scene(c, scene, charts, f"scenes[{i}]")

    _validate_track_params(c, raw.get("trackParams", {}))
    _validate_event_params(c, raw.get("eventParams", {}))
    _validate_layout_weights(c, raw.get("layoutWeights", {}))
    _validate_engine(c, raw.get("engine", {}))
    return c.issues


def _validate_chart(c, charts, name, path, stack=()):
    chart = charts[name]
    if not isinstance(chart, dict):
        c.error("BadChart", path, "chart def must be an object")
        return
    c.unknown_keys(chart, _CHART_KEYS, path)
    ctype = chart.get("chartType")
    if ctype not in CHART_TYPES:
        c.error("ChartType", f"{path}.chartType",
                f"chartType must be one of {', '.join(CHART_TYPES)}")
    if not isinstance(chart.get("title"), str) or not chart.get("title"):
        c.error("ChartTitle", f"{path}.title", "title must be a non-empty string")
    if not isinstance(chart.get("sourceTag"), str) or not chart.get("sourceTag"):
        c.error("ChartSourceTag", f"{path}.sourceTag",
                "sourceTag must be a non-empty string")
    series = chart.get("series")
    if not isinstance(series, list) or not series:
        c.error("ChartSeriesEmpty", f"{path}.series", "series must be a non-empty list")
        series = []
    for si, s in enumerate(series):
        spath = f"{path}.series[{si}]"
        if not isinstance(s, dict):
            c.error("BadSeries", spath, "series entry must be an object")
            continue
        c.unknown_keys(s, _SERIES_KEYS, spath)
        if not isinstance(s.get("name"), str) or not s.get("name"):
            c.error("SeriesName", f"{spath}.name", "name must be a non-empty string")
        pts = s.get("points")
        if not isinstance(pts, list):
            c.error("SeriesPoints", f"{spath}.points", "points must be a list")
            continue
        cats = []
        for pi, pt in enumerate(pts):
            ppath = f"{spath}.points[{pi}]"
            if (not isinstance(pt, list) or len(pt) != 2
                    or not isinstance(pt[0], str) or not _is_num(pt[1])):
                c.error("BadPoint", ppath, "point must be [category, number]")
                continue
            cats.append(pt[0])
            if ctype in ("pie", "donut") and pt[1] < 0:
                c.error("NegativeRadialValue", ppath,
                        f"{ctype} values must be >= 0")
        if len(set(cats)) != len(cats):
            c.error("DuplicateCategory", f"{spath}.points",
                    "duplicate category labels within a series")
    detail = chart.get("detailVariant")
    if detail is not None:
        dpath = f"{path}.detailVariant"
        if not isinstance(detail, str):
            c.error("BadDetailRef", dpath, "detailVariant must name a chart")
        elif detail not in charts:
            c.error("DanglingChartRef", dpath, f"chart {detail!r} is not defined")
        elif detail in stack or detail == name:
            c.error("DetailCycle", dpath, "detailVariant chain loops")
        else:
            dchart = charts[detail]
            if (isinstance(dchart, dict)
                    and dchart.get("sourceTag") != chart.get("sourceTag")):
                c.error("DetailSourceTag", dpath,
                        "detailVariant must share the chart's sourceTag")


def _validate_scene(c, scene, charts, path):
    if not isinstance(scene, dict):
        c.error("BadScene", path, "scene must be an object")
        return
    c.unknown_keys(scene, _SCENE_KEYS, path)
    if not isinstance(scene.get("name"), str) or not scene.get("name"):
        c.error("SceneName", f"{path}.name", "name must be a non-empty string")
    cmds = scene.get("enabledCommands", [])
    if not isinstance(cmds, list):
        c.error("BadCommands", f"{path}.enabledCommands",
                "enabledCommands must be a list")
        cmds = []
    for ci, cmd in enumerate(cmds):
        if cmd not in COMMAND_NAMES:
            c.error("UnknownCommand", f"{path}.enabledCommands[{ci}]",
                    f"unknown command {cmd!r}")

    keys_seen = set()
    bindings = scene.get("bindings", [])
    if not isinstance(bindings, list):
        c.error("BadBindings", f"{path}.bindings", "bindings must be a list")
        bindings = []
    for bi, b in enumerate(bindings):
        bpath = f"{path}.bindings[{bi}]"
        if not isinstance(b, dict):
            c.error("BadBinding", bpath, "binding must be an object")
            continue
        c.unknown_keys(b, _BINDING_KEYS, bpath)
        label = b.get("classLabel")
        if not isinstance(label, str) or not label:
            c.error("BindingClassLabel", f"{bpath}.classLabel",
                    "classLabel must be a non-empty string")
        ordinal = b.get("instanceOrdinal", 1)
        if not isinstance(ordinal, int) or isinstance(ordinal, bool) or ordinal < 1:
            c.error("BindingOrdinal", f"{bpath}.instanceOrdinal",
                    "instanceOrdinal must be an integer >= 1")
        else:
            key = f"{label}#{ordinal}"
            if key in keys_seen:
                c.error("DuplicateBinding", f"{bpath}.instanceOrdinal",
                        f"binding key {key!r} appears twice in this scene")
            keys_seen.add(key)
        chart_ref = b.get("chart")
        chart_def = None
        if not isinstance(chart_ref, str) or chart_ref not in charts:
            c.error("DanglingChartRef", f"{bpath}.chart",
                    f"chart {chart_ref!r} is not defined")
        else:
            chart_def = charts[chart_ref]
        sname = b.get("seriesName")
        if sname is not None:
            if not isinstance(sname, str):
                c.error("BadSeriesName", f"{bpath}.seriesName",
                        "seriesName must be a string")
            elif isinstance(chart_def, dict) and isinstance(chart_def.get("series"), list):
                names = [s.get("name") for s in chart_def["series"] if isinstance(s, dict)]
                if sname not in names:
                    c.error("SeriesNotInChart", f"{bpath}.seriesName",
                            f"series {sname!r} not present in chart {chart_ref!r}")
        ann = b.get("annotation")
        if ann is not None:
            apath = f"{bpath}.annotation"
            if not isinstance(ann, dict):
                c.error("BadAnnotation", apath, "annotation must be an object")
            else:
                c.unknown_keys(ann, _ANNOTATION_KEYS, apath)
                if not any(isinstance(ann.get(k), str) and ann.get(k)
                           for k in _ANNOTATION_KEYS):
                    c.error("AnnotationEmpty", apath,
                            "annotation needs imageRef or text")

    cond_ids = set()
    conditions = scene.get("conditions", [])
    if not isinstance(conditions, list):
        c.error("BadConditions", f"{path}.conditions", "conditions must be a list")
        conditions = []
    for ci, cond in enumerate(conditions):
        cpath = f"{path}.conditions[{ci}]"
        if not isinstance(cond, dict):
            c.error("BadCondition", cpath, "condition must be an object")
            continue
        c.unknown_keys(cond, _CONDITION_KEYS, cpath)
        cid = cond.get("conditionId")
        if not isinstance(cid, str) or not cid:
            c.error("ConditionId", f"{cpath}.conditionId",
                    "conditionId must be a non-empty string")
        elif cid in cond_ids:
            c.error("DuplicateConditionId", f"{cpath}.conditionId",
                    f"conditionId {cid!r} appears twice in this scene")
        else:
            cond_ids.add(cid)
        prompt = cond.get("prompt")
        if not isinstance(prompt, str) or not prompt:
            c.error("PromptEmpty", f"{cpath}.prompt",
                    "prompt must be a non-empty string")
        elif is_first_person_prompt(prompt):
            c.warn("FirstPersonPrompt", f"{cpath}.prompt",
                   "first-person prompts answer unreliably; phrase the question "
                   "about the object instead")
        interval = cond.get("pollIntervalSeconds", 1.0)
        if not _is_num(interval) or interval <= 0:
            c.error("PollInterval", f"{cpath}.pollIntervalSeconds",
                    "pollIntervalSeconds must be > 0")
        debounce = cond.get("debounceCount", 2)
        if not isinstance(debounce, int) or isinstance(debounce, bool) or debounce < 1:
            c.error("DebounceCount", f"{cpath}.debounceCount",
                    "debounceCount must be an integer >= 1")
        if not isinstance(cond.get("latching", False), bool):
            c.error("LatchingType", f"{cpath}.latching", "latching must be a boolean")
        swaps = cond.get("swapCharts", [])
        if not isinstance(swaps, list):
            c.error("BadSwaps", f"{cpath}.swapCharts", "swapCharts must be a list")
            swaps = []
        for si, sw in enumerate(swaps):
            spath = f"{cpath}.swapCharts[{si}]"
            if not isinstance(sw, dict):
                c.error("BadSwap", spath, "swap must be an object")
                continue
            c.unknown_keys(sw, _SWAP_KEYS, spath)
            if sw.get("binding") not in keys_seen:
                c.error("DanglingBindingRef", f"{spath}.binding",
                        f"binding {sw.get('binding')!r} not present in this scene")
            if not isinstance(sw.get("chart"), str) or sw.get("chart") not in charts:
                c.error("DanglingChartRef", f"{spath}.chart",
                        f"chart {sw.get('chart')!r} is not defined")

    registry = scene.get("compositionRegistry", {})
    if not isinstance(registry, dict):
        c.error("BadRegistry", f"{path}.compositionRegistry",
                "compositionRegistry must be an object")
        registry = {}
    for mode in sorted(registry):
        rpath = f"{path}.compositionRegistry.{mode}"
        if mode not in _REGISTRY_MODES:
            c.error("RegistryMode", rpath,
                    f"mode must be one of {', '.join(_REGISTRY_MODES)}")
            continue
        params = registry[mode]
        if not isinstance(params, dict):
            c.error("BadRegistryParams", rpath, "registry params must be an object")
            continue
        c.unknown_keys(params, ("title",), rpath)
        if "title" in params and (not isinstance(params["title"], str) or not params["title"]):
            c.error("RegistryTitle", f"{rpath}.title", "title must be a non-empty string")


def _validate_track_params(c, tp):
    path = "trackParams"
    if not isinstance(tp, dict):
        c.error("BadSection", path, "trackParams must be an object")
        return
    c.unknown_keys(tp, _TRACK_KEYS, path)
    gr = tp.get("gateRadius", 0.25)
    if not _is_num(gr) or gr <= 0:
        c.error("GateRadius", f"{path}.gateRadius", "gateRadius must be > 0")
    tl = tp.get("trackLossFrames", 15)
    if not isinstance(tl, int) or isinstance(tl, bool) or tl < 1:
        c.error("TrackLossFrames", f"{path}.trackLossFrames",
                "trackLossFrames must be an integer >= 1")
    cm = tp.get("calibrationMinSamples", 30)
    if not isinstance(cm, int) or isinstance(cm, bool) or cm < 1:
        c.error("CalibrationMinSamples", f"{path}.calibrationMinSamples",
                "calibrationMinSamples must be an integer >= 1")


def _validate_event_params(c, ep):
    path = "eventParams"
    if not isinstance(ep, dict):
        c.error("BadSection", path, "eventParams must be an object")
        return
    c.unknown_keys(ep, _EVENT_KEYS, path)

    def num(key, default):
        v = ep.get(key, default)
        if not _is_num(v):
            c.error("BadNumber", f"{path}.{key}", f"{key} must be a number")
            return default
        return v

    lift_on = num("liftOnHeight", 0.06)
    lift_off = num("liftOffHeight", 0.03)
    if lift_on <= 0:
        c.error("LiftOnHeight", f"{path}.liftOnHeight", "liftOnHeight must be > 0")
    if lift_off <= 0:
        c.error("LiftOffHeight", f"{path}.liftOffHeight", "liftOffHeight must be > 0")
    elif lift_off >= lift_on:
        c.error("LiftThresholds", f"{path}.liftOffHeight",
                "liftOffHeight must be below liftOnHeight")
    join_d = num("joinDistance", 0.12)
    split_d = num("splitDistance", 0.18)
    if join_d <= 0:
        c.error("JoinDistance", f"{path}.joinDistance", "joinDistance must be > 0")
    if split_d <= 0:
        c.error("SplitDistance", f"{path}.splitDistance", "splitDistance must be > 0")
    elif join_d >= split_d:
        c.error("JoinSplitOrder", f"{path}.joinDistance",
                "joinDistance must be below splitDistance")
    cutoff = num("orientationCutoffDeg", 45.0)
    if not (0 < cutoff < 90):
        c.error("OrientationCutoff", f"{path}.orientationCutoffDeg",
                "orientationCutoffDeg must be between 0 and 90 exclusive")
    dwell = num("dwellSeconds", 1.0)
    if dwell <= 0:
        c.error("DwellSeconds", f"{path}.dwellSeconds", "dwellSeconds must be > 0")
    near = num("nearBand", 0.45)
    far = num("farBand", 1.2)
    if near <= 0:
        c.error("NearBand", f"{path}.nearBand", "nearBand must be > 0")
    if far <= 0:
        c.error("FarBand", f"{path}.farBand", "farBand must be > 0")
    elif near >= far:
        c.error("BandOrder", f"{path}.nearBand", "nearBand must be below farBand")
    hyst = num("bandHysteresis", 0.05)
    if hyst < 0:
        c.error("BandHysteresis", f"{path}.bandHysteresis",
                "bandHysteresis must be >= 0")
    eps = num("stationaryEpsilon", 0.01)
    if eps < 0:
        c.error("StationaryEpsilon", f"{path}.stationaryEpsilon",
                "stationaryEpsilon must be >= 0")
    win = ep.get("stationaryWindow", 5)
    if not isinstance(win, int) or isinstance(win, bool) or win < 1:
        c.error("StationaryWindow", f"{path}.stationaryWindow",
                "stationaryWindow must be an integer >= 1")
    snap = num("snapRadius", 24.0)
    if snap <= 0:
        c.error("SnapRadius", f"{path}.snapRadius", "snapRadius must be > 0")
    hand = ep.get("pointingHand", "right")
    if hand not in ("left", "right"):
        c.error("PointingHand", f"{path}.pointingHand",
                "pointingHand must be 'left' or 'right'")


def _validate_layout_weights(c, lw):
    path = "layoutWeights"
    if not isinstance(lw, dict):
        c.error("BadSection", path, "layoutWeights must be an object")
        return
    c.unknown_keys(lw, _LAYOUT_KEYS, path)
    for key in ("wFace", "wObject", "wVis", "wTop", "wPrev"):
        v = lw.get(key, 1.0)
        if not _is_num(v) or v < 0:
            c.error("NegativeWeight", f"{path}.{key}", f"{key} must be >= 0")
    alpha = lw.get("smoothingAlpha", 0.25)
    if not _is_num(alpha) or not (0 < alpha <= 1):
        c.error("SmoothingAlpha", f"{path}.smoothingAlpha",
                "smoothingAlpha must be in (0, 1]")
    margin = lw.get("margin", 12)
    if not _is_num(margin) or margin < 0:
        c.error("Margin", f"{path}.margin", "margin must be >= 0")


def _validate_engine(c, eng):
    path = "engine"
    if not isinstance(eng, dict):
        c.error("BadSection", path, "engine must be an object")
        return
    c.unknown_keys(eng, _ENGINE_KEYS, path)
    for key in ("visBaseSize", "annotationSize"):
        v = eng.get(key, [1, 1])
        if (not isinstance(v, list) or len(v) != 2
                or not all(_is_num(x) and x > 0 for x in v)):
            c.error("BadSize", f"{path}.{key}", f"{key} must be [width, height] > 0")
    ref = eng.get("refDistance", 0.7)
    if not _is_num(ref) or ref <= 0:
        c.error("RefDistance", f"{path}.refDistance", "refDistance must be > 0")
    smin = eng.get("scaleMin", 0.5)
    smax = eng.get("scaleMax", 2.5)
    if not _is_num(smin) or smin <= 0:
        c.error("ScaleMin", f"{path}.scaleMin", "scaleMin must be > 0")
    if not _is_num(smax) or smax <= 0:
        c.error("ScaleMax", f"{path}.scaleMax", "scaleMax must be > 0")
    elif _is_num(smin) and smin >= smax:
        c.error("ScaleRange", f"{path}.scaleMin", "scaleMin must be below scaleMax")
    fps = eng.get("fps", 30.0)
    if not _is_num(fps) or fps <= 0:
        c.error("Fps", f"{path}.fps", "fps must be > 0")


# ---------------------------------------------------------------------------
# building
# ---------------------------------------------------------------------------

def build_presentation(raw: dict) -> Presentation:
    """Construct the runtime presentation from a validated config dict."""
    issues = [i for i in validate_config(raw) if i.severity == ERROR]
    if issues:
        raise ConfigError("; ".join(str(i) for i in issues[:5]))

    chart_defs = raw.get("charts", {})
    built: dict = {}

    def chart(name, stack=()):
        if name in built:
            return built[name]
        d = chart_defs[name]
        detail = None
        if d.get("detailVariant"):
            detail = chart(d["detailVariant"], stack + (name,))
        spec = ChartSpec(
            chart_type=d["chartType"],
            title=d["title"],
            source_tag=d["sourceTag"],
            series=tuple(
                DataSeries(name=s["name"], points=tuple((p[0], p[1]) for p in s["points"]))
                for s in d["series"]
            ),
            detail_variant=detail,
        )
        built[name] = spec
        return spec

    scenes = []
    for s in raw["scenes"]:
        bindings = tuple(
            Binding(
                class_label=b["classLabel"],
                instance_ordinal=int(b.get("instanceOrdinal", 1)),
                chart=chart(b["chart"]),
                series_name=b.get("seriesName"),
                annotation=(
                    Annotation(
                        image_ref=b["annotation"].get("imageRef"),
                        text=b["annotation"].get("text"),
                    )
                    if b.get("annotation") else None
                ),
            )
            for b in s.get("bindings", [])
        )
        conditions = tuple(
            ConditionSpec(
                condition_id=cd["conditionId"],
                prompt=cd["prompt"],
                poll_interval_seconds=float(cd.get("pollIntervalSeconds", 1.0)),
                debounce_count=int(cd.get("debounceCount", 2)),
                latching=bool(cd.get("latching", False)),
                swap_charts=tuple(
                    (sw["binding"], chart(sw["chart"]))
                    for sw in cd.get("swapCharts", [])
                ),
            )
            for cd in s.get("conditions", [])
        )
        registry = tuple(
            (mode, dict(params))
            for mode, params in sorted(s.get("compositionRegistry", {}).items())
        )
        scenes.append(SceneConfig(
            name=s["name"],
            enabled_commands=frozenset(VisCommand(cmd) for cmd in s.get("enabledCommands", [])),
            bindings=bindings,
            conditions=conditions,
            composition_registry=registry,
        ))

    tp = raw.get("trackParams", {})
    ep = raw.get("eventParams", {})
    lw = raw.get("layoutWeights", {})
    eng = raw.get("engine", {})
    return Presentation(
        scenes=tuple(scenes),
        track_params=TrackParams(
            gate_radius=float(tp.get("gateRadius", 0.25)),
            track_loss_frames=int(tp.get("trackLossFrames", 15)),
            calibration_min_samples=int(tp.get("calibrationMinSamples", 30)),
        ),
        event_params=EventParams(
            lift_on_height=float(ep.get("liftOnHeight", 0.06)),
            lift_off_height=float(ep.get("liftOffHeight", 0.03)),
            join_distance=float(ep.get("joinDistance", 0.12)),
            split_distance=float(ep.get("splitDistance", 0.18)),
            orientation_cutoff_deg=float(ep.get("orientationCutoffDeg", 45.0)),
            dwell_seconds=float(ep.get("dwellSeconds", 1.0)),
            near_band=float(ep.get("nearBand", 0.45)),
            far_band=float(ep.get("farBand", 1.2)),
            band_hysteresis=float(ep.get("bandHysteresis", 0.05)),
            stationary_epsilon=float(ep.get("stationaryEpsilon", 0.01)),
            stationary_window=int(ep.get("stationaryWindow", 5)),
            snap_radius=float(ep.get("snapRadius", 24.0)),
            pointing_hand=ep.get("pointingHand", "right"),
        ),
        layout_weights=LayoutWeights(
            w_face=float(lw.get("wFace", 4.0)),
            w_object=float(lw.get("wObject", 2.0)),
            w_vis=float(lw.get("wVis", 2.0)),
            w_top=float(lw.get("wTop", 1.0)),
            w_prev=float(lw.get("wPrev", 2.0)),
            smoothing_alpha=float(lw.get("smoothingAlpha", 0.25)),
            margin=float(lw.get("margin", 12.0)),
        ),
        engine=EngineParams(
            vis_base_size=tuple(float(x) for x in eng.get("visBaseSize", [240, 180])),
            annotation_size=tuple(float(x) for x in eng.get("annotationSize", [200, 90])),
            ref_distance=float(eng.get("refDistance", 0.7)),
            scale_min=float(eng.get("scaleMin", 0.5)),
            scale_max=float(eng.get("scaleMax", 2.5)),
            fps=float(eng.get("fps", 30.0)),
        ),
    )


def load_config(path):
    """Load + validate + build.  Returns (presentation, issues); presentation
    is None when there are errors."""
    raw = load_raw_config(path)
    issues = validate_config(raw)
    if any(i.severity == ERROR for i in issues):
        return None, issues
    return build_presentation(raw), issues
