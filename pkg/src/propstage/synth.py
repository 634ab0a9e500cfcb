"""Synthetic scenario streams for fixtures, demos and benchmarks.

Scenarios are scripted closed-loop: a live Session runs alongside the frame
generator so the scripted hand can aim at marks where charts actually got
placed, exactly like a presenter reacting to the screen.  Object positions
are the table-contact point (bottom centre) in camera space, so a resting
object has height 0 and the table baseline calibrates to y=0.

Each generator returns (stream, config): streams embed truth records stating
what the script was built to produce, and the config is the presentation the
stream is meant to replay against.
"""
from __future__ import annotations

import random

from .condition import ScriptedOracle
from .config import SCHEMA_VERSION, build_presentation
from .core import Rect, Vec3
from .formats import TrackStream, control_record, oracle_flip_record, truth_record
from .session import Session
from .tracking import Detection, Hand, TrackFrame

FRAME_SIZE = (1280, 720)
FPS = 30.0
FOCAL = 500.0            # px; square pixels, principal point at frame centre
CX, CY = 640.0, 360.0

FACE_BOX = Rect(560.0, 40.0, 160.0, 160.0)
JITTER = 0.002           # m; well under the stationary epsilon


def project(pos: Vec3, size) -> Rect:
    """Screen bbox of an object standing at ``pos`` (bottom centre) with
    physical (width, height) in meters."""
    w = FOCAL * size[0] / pos.z
    h = FOCAL * size[1] / pos.z
    cx = CX + FOCAL * pos.x / pos.z
    cy = CY - FOCAL * (pos.y + size[1] / 2.0) / pos.z
    return Rect(cx - w / 2.0, cy - h / 2.0, w, h)


class _Prop:
    __slots__ = ("label", "size", "pos", "present", "object_id")

    def __init__(self, label, size, pos):
        self.label = label
        self.size = size
        self.pos = pos
        self.present = False
        self.object_id = None


class _Director:
    """Frame-by-frame scenario scripting against a live session."""

    def __init__(self, config: dict, seed: int, description: str):
        self.config = config
        self.session = Session(build_presentation(config), ScriptedOracle())
        self.rng = random.Random(seed)
        self.records: list = []
        self.fi = 0
        self.props: dict = {}       # name -> _Prop, insertion order = detection order
        self.hand_tip = None        # (x, y) px or None
        self._next_object_id = 1

    # -- scripting primitives ---------------------------------------------

    def add_prop(self, name, label, size, pos, present=True):
        p = _Prop(label, size, pos)
        self.props[name] = p
        if present:
            self.enter(name)
        return p

    def enter(self, name):
        p = self.props[name]
        if not p.present:
            p.present = True
            if p.object_id is None:
                # mirrors the tracker: fresh ids in detection order
                p.object_id = self._next_object_id
                self._next_object_id += 1

    def remove(self, name):
        self.props[name].present = False

    def object_id(self, name):
        return self.props[name].object_id

    def control(self, cmd, hand=None):
        rec = control_record(cmd, hand)
        self.records.append(("control", rec))
        self.session.queue_control(rec)

    def flip(self, condition_id, answer):
        rec = oracle_flip_record(condition_id, answer)
        self.records.append(("oracle", rec))
        self.session.queue_oracle_flip(rec)

    def truth(self, kind, data):
        self.records.append(("truth", truth_record(kind, data)))

    def hold(self, frames):
        for _ in range(frames):
            self.emit()

    def move(self, name, to: Vec3, frames: int):
        """Linear slide of one prop; everything else holds still."""
        p = self.props[name]
        start = p.pos
        for i in range(1, frames + 1):
            f = i / frames
            p.pos = Vec3(
                start.x + (to.x - start.x) * f,
                start.y + (to.y - start.y) * f,
                start.z + (to.z - start.z) * f,
            )
            self.emit()

    def point(self, tip, frames):
        self.hand_tip = tip
        self.hold(frames)

    def hand_off(self, frames=3):
        self.hand_tip = None
        self.hold(frames)

    # -- queries against the live session -----------------------------------

    def mark_center(self, series, category):
        for v in self.session.controller.runtime.all_instances():
            for s, c, r in v.mark_rects:
                if s == series and c == category:
                    return (r.cx, r.cy)
        raise LookupError(f"no placed mark for ({series!r}, {category!r})")

    def prop_center(self, name):
        p = self.props[name]
        r = project(p.pos, p.size)
        return (r.cx, r.cy)

    # -- frame emission -----------------------------------------------------

    def emit(self):
        dets = []
        for p in self.props.values():
            if not p.present:
                continue
            jx = self.rng.uniform(-JITTER, JITTER)
            jy = self.rng.uniform(-JITTER, JITTER)
            jz = self.rng.uniform(-JITTER, JITTER)
            pos = Vec3(p.pos.x + jx, max(0.0, p.pos.y + jy), p.pos.z + jz)
            dets.append(Detection(
                class_label=p.label,
                bbox=project(pos, p.size),
                position=pos,
                confidence=round(0.9 + 0.1 * self.rng.random(), 4),
            ))
        hands = ()
        if self.hand_tip is not None:
            hands = (Hand("right", (float(self.hand_tip[0]), float(self.hand_tip[1]))),)
        face = Rect(
            FACE_BOX.x + self.rng.uniform(-2.0, 2.0),
            FACE_BOX.y + self.rng.uniform(-2.0, 2.0),
            FACE_BOX.w, FACE_BOX.h,
        )
        tf = TrackFrame(
            timestamp=self.fi / FPS,
            frame_index=self.fi,
            detections=tuple(dets),
            hands=hands,
            face_box=face,
            frame_size=FRAME_SIZE,
        )
        self.fi += 1
        self.records.append(("frame", tf))
        self.session.process_frame(tf)

    def stream(self, description: str) -> TrackStream:
        return TrackStream(FRAME_SIZE, FPS, description, self.records)


# ---------------------------------------------------------------------------
# shared config pieces
# ---------------------------------------------------------------------------

def _series(name, cats, values):
    return {"name": name, "points": [[c, v] for c, v in zip(cats, values)]}


def _base_config(charts, scenes):
    return {
        "schemaVersion": SCHEMA_VERSION,
        "charts": charts,
        "scenes": scenes,
        "trackParams": {"calibrationMinSamples": 30},
        "eventParams": {},
        "layoutWeights": {},
        "engine": {"fps": FPS},
    }


_ALL_COMMANDS = [
    "ShowHide", "Scale", "ComposeDecompose", "SelectDataPoint",
    "SelectDataSeries", "ChangeDataSource", "HierarchicalNavigation",
    "Annotation",
]


# ---------------------------------------------------------------------------
# wine tasting
# ---------------------------------------------------------------------------

def _wine_config() -> dict:
    months = ["2019", "2020", "2021", "2022", "2023"]
    charts = {
        "margauxProfile": {
            "chartType": "radar",
            "title": "Margaux flavor profile",
            "sourceTag": "margaux",
            "series": [_series("intensity", ["body", "tannin", "acidity", "fruit", "oak"],
                               [4.0, 4.5, 3.0, 3.5, 4.0])],
        },
        "shirazProfile": {
            "chartType": "radar",
            "title": "Shiraz flavor profile",
            "sourceTag": "shiraz",
            "series": [_series("intensity", ["body", "tannin", "acidity", "fruit", "oak"],
                               [4.5, 3.5, 2.5, 4.5, 3.0])],
        },
        "priceTrend": {
            "chartType": "line",
            "title": "Vintage price trend",
            "sourceTag": "vintages",
            "series": [
                _series("Bordeaux wine", months, [310.0, 335.0, 360.0, 420.0, 455.0]),
                _series("Australian wine", months, [38.0, 42.0, 51.0, 58.0, 66.0]),
            ],
        },
        "cellarTemps": {
            "chartType": "line",
            "title": "Cellar temperature log",
            "sourceTag": "cellar",
            "series": [_series("celsius", months, [13.0, 13.5, 12.8, 13.2, 13.1])],
        },
    }
    scenes = [
        {
            "name": "profiles",
            "enabledCommands": ["ShowHide", "Scale", "ComposeDecompose", "Annotation"],
            "bindings": [
                {"classLabel": "bottle", "instanceOrdinal": 1, "chart": "margauxProfile",
                 "annotation": {"text": "Margaux 2015 (Bordeaux)"}},
                {"classLabel": "bottle", "instanceOrdinal": 2, "chart": "shirazProfile"},
            ],
            "compositionRegistry": {"overlay": {"title": "Profiles compared"}},
        },
        {
            "name": "vintages",
            "enabledCommands": ["ShowHide", "Scale", "SelectDataSeries", "ChangeDataSource"],
            "bindings": [
                {"classLabel": "bottle", "instanceOrdinal": 1, "chart": "priceTrend",
                 "seriesName": "Bordeaux wine"},
                {"classLabel": "bottle", "instanceOrdinal": 2, "chart": "priceTrend",
                 "seriesName": "Australian wine"},
            ],
            "conditions": [
                {"conditionId": "cellar-check",
                 "prompt": "Is the cellar door open?",
                 "pollIntervalSeconds": 1.0, "debounceCount": 2, "latching": False,
                 "swapCharts": [{"binding": "bottle#2", "chart": "cellarTemps"}]},
            ],
        },
    ]
    return _base_config(charts, scenes)


def _wine(seed: int, objects: int):
    cfg = _wine_config()
    d = _Director(cfg, seed, "")
    bottle_size = (0.08, 0.30)
    glass_size = (0.08, 0.15)

    d.add_prop("bottle1", "bottle", bottle_size, Vec3(-0.32, 0.0, 0.70))
    d.add_prop("glass", "glass", glass_size, Vec3(0.10, 0.0, 0.78))
    d.add_prop("bottle2", "bottle", bottle_size, Vec3(0.34, 0.0, 0.72), present=False)

    d.hold(60)                                   # calibration + first charts
    d.enter("bottle2")
    d.hold(30)

    # annotation: dwell on bottle 1
    d.point(d.prop_center("bottle1"), 45)
    d.hand_off(5)

    # overlay join: bottle 2 slides next to bottle 1, then back
    d.move("bottle2", Vec3(-0.24, 0.0, 0.70), 60)
    d.hold(30)
    d.move("bottle2", Vec3(0.34, 0.0, 0.72), 60)
    d.hold(10)

    d.control("SceneNext")
    d.hold(40)

    # series select: lift bottle 2, hold, lower
    d.move("bottle2", Vec3(0.34, 0.12, 0.72), 12)
    d.hold(30)
    d.move("bottle2", Vec3(0.34, 0.0, 0.72), 12)
    d.hold(20)

    # registered swap: the cellar door opens
    d.flip("cellar-check", 1)
    d.hold(110)

    b1, gl, b2 = d.object_id("bottle1"), d.object_id("glass"), d.object_id("bottle2")
    d.truth("eventCount", {"match": {"kind": "ObjectAppeared", "objectId": b1}, "count": 2})
    d.truth("eventCount", {"match": {"kind": "ObjectAppeared", "objectId": b2}, "count": 2})
    d.truth("eventCount", {"match": {"kind": "ObjectAppeared", "objectId": gl}, "count": 2})
    d.truth("eventCount", {"match": {"kind": "ObjectHidden"}, "count": 0})
    d.truth("eventCount", {"match": {"kind": "PointAtObject", "objectId": b1}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "PointDwellEnd"}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "ProximityJoin", "objectId": b1, "otherId": b2},
                           "count": 1})
    d.truth("eventCount", {"match": {"kind": "ProximitySplit"}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "Lifted", "objectId": b2}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "Lowered", "objectId": b2}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "ConditionMet", "conditionId": "cellar-check"},
                           "count": 1})
    d.truth("effectCount", {"match": {"effect": "ShowComposite", "composition": "overlay"},
                            "count": 1})
    d.truth("effectCount", {"match": {"effect": "ShowAnnotation"}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "SwapChart",
                                      "chartTitle": "Cellar temperature log"}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "UnboundObject", "objectId": gl}, "count": 2})
    d.truth("finalScene", {"index": 1})
    return d.stream(f"wine tasting walkthrough (seed={seed})"), cfg


# ---------------------------------------------------------------------------
# EV sales review
# ---------------------------------------------------------------------------

def _ev_config() -> dict:
    quarters = ["Q1", "Q2", "Q3", "Q4"]
    charts = {
        "brandA": {
            "chartType": "bar",
            "title": "Brand A quarterly sales",
            "sourceTag": "brand-a",
            "series": [_series("units", quarters, [410.0, 520.0, 585.0, 660.0])],
            "detailVariant": "brandAShare",
        },
        "brandAShare": {
            "chartType": "pie",
            "title": "Brand A segment share",
            "sourceTag": "brand-a",
            "series": [_series("share", ["sedan", "suv", "compact"], [44.0, 38.0, 18.0])],
        },
        "brandB": {
            "chartType": "bar",
            "title": "Brand B quarterly sales",
            "sourceTag": "brand-b",
            "series": [_series("units", quarters, [380.0, 355.0, 410.0, 445.0])],
        },
    }
    scenes = [{
        "name": "sales review",
        "enabledCommands": ["ShowHide", "Scale", "ComposeDecompose",
                            "HierarchicalNavigation"],
        "bindings": [
            {"classLabel": "car", "instanceOrdinal": 1, "chart": "brandA"},
            {"classLabel": "car", "instanceOrdinal": 2, "chart": "brandB"},
        ],
        "compositionRegistry": {
            "horizontal": {"title": "Brand A vs Brand B"},
            "vertical": {"title": "Combined quarterly sales"},
        },
    }]
    return _base_config(charts, scenes)


def _ev(seed: int, objects: int):
    cfg = _ev_config()
    d = _Director(cfg, seed, "")
    car = (0.10, 0.05)
    d.add_prop("car1", "car", car, Vec3(-0.18, 0.0, 0.70))
    d.add_prop("car2", "car", car, Vec3(0.26, 0.0, 0.70))

    d.hold(60)

    # clustered: slide car2 beside car1 (horizontal approach), then apart
    d.move("car2", Vec3(-0.08, 0.0, 0.70), 50)
    d.hold(30)
    d.move("car2", Vec3(0.26, 0.0, 0.70), 50)
    d.hold(15)

    # stacked: lift car2, carry over car1, set it on top, then unstack
    d.move("car2", Vec3(0.26, 0.16, 0.70), 12)
    d.move("car2", Vec3(-0.18, 0.16, 0.70), 40)
    d.move("car2", Vec3(-0.18, 0.05, 0.70), 15)
    d.hold(30)
    d.move("car2", Vec3(-0.18, 0.16, 0.70), 15)
    d.move("car2", Vec3(0.26, 0.16, 0.70), 40)
    d.move("car2", Vec3(0.26, 0.0, 0.70), 12)
    d.hold(15)

    # hierarchical detail: pull car1 near, push it back
    d.move("car1", Vec3(-0.18, 0.0, 0.42), 35)
    d.hold(30)
    d.move("car1", Vec3(-0.18, 0.0, 0.70), 35)
    d.hold(20)

    c1, c2 = d.object_id("car1"), d.object_id("car2")
    d.truth("eventCount", {"match": {"kind": "ObjectAppeared"}, "count": 2})
    d.truth("eventCount", {"match": {"kind": "ProximityJoin", "objectId": c1, "otherId": c2},
                           "count": 2})
    d.truth("eventCount", {"match": {"kind": "ProximityJoin", "orientation": "horizontal"},
                           "count": 1})
    d.truth("eventCount", {"match": {"kind": "ProximityJoin", "orientation": "vertical"},
                           "count": 1})
    d.truth("eventCount", {"match": {"kind": "ProximitySplit"}, "count": 2})
    d.truth("eventCount", {"match": {"kind": "Lifted", "objectId": c2}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "DistanceBandChanged", "objectId": c1,
                                     "band": "near"}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "DistanceBandChanged", "objectId": c1,
                                     "band": "normal"}, "count": 1})
    # SelectDataSeries is not enabled here: the lift logs an event, no effect
    d.truth("effectCount", {"match": {"effect": "SelectSeries"}, "count": 0})
    d.truth("effectCount", {"match": {"effect": "ShowComposite", "composition": "clustered"},
                            "count": 1})
    d.truth("effectCount", {"match": {"effect": "ShowComposite", "composition": "stacked"},
                            "count": 1})
    d.truth("effectCount", {"match": {"effect": "EnterDetail",
                                      "chartTitle": "Brand A segment share"}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "ExitDetail"}, "count": 1})
    d.truth("finalScene", {"index": 0})
    return d.stream(f"EV sales review walkthrough (seed={seed})"), cfg


# ---------------------------------------------------------------------------
# fruit stand
# ---------------------------------------------------------------------------

def _fruit_config() -> dict:
    months = ["Jan", "Feb", "Mar", "Apr", "May", "Jun"]
    charts = {
        "appleSugar": {
            "chartType": "donut",
            "title": "Apple sugar content",
            "sourceTag": "apple",
            "series": [_series("grams", ["fructose", "glucose", "sucrose"],
                               [5.9, 2.4, 2.1])],
        },
        "bananaPrice": {
            "chartType": "line",
            "title": "Banana price by month",
            "sourceTag": "banana",
            "series": [_series("price", months, [1.10, 1.15, 1.22, 1.18, 1.25, 1.31])],
        },
    }
    scenes = [{
        "name": "fruit stand",
        "enabledCommands": ["ShowHide", "Scale", "SelectDataSeries",
                            "SelectDataPoint", "Annotation"],
        "bindings": [
            {"classLabel": "apple", "instanceOrdinal": 1, "chart": "appleSugar",
             "annotation": {"imageRef": "apple-closeup.jpg", "text": "Honeycrisp"}},
            {"classLabel": "banana", "instanceOrdinal": 1, "chart": "bananaPrice",
             "seriesName": "price"},
        ],
    }]
    return _base_config(charts, scenes)


def _fruit(seed: int, objects: int):
    cfg = _fruit_config()
    d = _Director(cfg, seed, "")
    d.add_prop("apple", "apple", (0.08, 0.08), Vec3(-0.30, 0.0, 0.72))
    d.add_prop("banana", "banana", (0.18, 0.05), Vec3(0.05, 0.0, 0.70))
    d.add_prop("orange", "orange", (0.08, 0.08), Vec3(0.33, 0.0, 0.74))

    d.hold(60)

    # annotation dwell on the apple
    d.point(d.prop_center("apple"), 45)
    d.hand_off(8)

    # point at a chart mark: select, withdraw, then deselect
    d.point(d.mark_center("price", "Mar"), 45)
    d.hand_off(8)
    d.point(d.mark_center("price", "Mar"), 45)
    d.hand_off(8)

    # lift the banana to highlight its series, lower it, then take it away
    d.move("banana", Vec3(0.05, 0.12, 0.70), 12)
    d.hold(30)
    d.move("banana", Vec3(0.05, 0.0, 0.70), 12)
    d.hold(20)
    d.remove("banana")
    d.hold(40)              # track loss -> ObjectHidden

    ap, ba, orng = d.object_id("apple"), d.object_id("banana"), d.object_id("orange")
    d.truth("eventCount", {"match": {"kind": "ObjectAppeared"}, "count": 3})
    d.truth("eventCount", {"match": {"kind": "PointAtObject", "objectId": ap}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "PointAtVis", "seriesName": "price",
                                     "category": "Mar"}, "count": 2})
    d.truth("eventCount", {"match": {"kind": "PointDwellEnd"}, "count": 3})
    d.truth("eventCount", {"match": {"kind": "Lifted", "objectId": ba}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "Lowered", "objectId": ba}, "count": 1})
    d.truth("eventCount", {"match": {"kind": "ObjectHidden", "objectId": ba}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "SelectPoint", "category": "Mar"}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "DeselectPoint", "category": "Mar"}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "ShowAnnotation", "objectId": ap}, "count": 1})
    d.truth("effectCount", {"match": {"effect": "UnboundObject", "objectId": orng}, "count": 1})
    d.truth("finalScene", {"index": 0})
    return d.stream(f"fruit stand walkthrough (seed={seed})"), cfg


# ---------------------------------------------------------------------------
# random walk (bench)
# ---------------------------------------------------------------------------

def _random_walk_config(objects: int) -> dict:
    quarters = ["Q1", "Q2", "Q3", "Q4"]
    charts = {}
    bindings = []
    for i in range(1, objects + 1):
        name = f"block{i}"
        charts[name] = {
            "chartType": "bar",
            "title": f"Block {i} metrics",
            "sourceTag": f"block-{i}",
            "series": [_series("value", quarters,
                               [float(10 + 3 * i), float(14 + 2 * i),
                                float(9 + 4 * i), float(16 + i)])],
        }
        bindings.append({"classLabel": "block", "instanceOrdinal": i, "chart": name})
    scenes = [{
        "name": "random walk",
        "enabledCommands": ["ShowHide", "Scale"],
        "bindings": bindings,
    }]
    return _base_config(charts, scenes)


def _random_walk(seed: int, objects: int, frames: int = 600):
    cfg = _random_walk_config(objects)
    d = _Director(cfg, seed, "")
    rng = random.Random(seed * 7919 + 13)
    for i in range(objects):
        x = -0.40 + 0.80 * (i + 0.5) / objects
        d.add_prop(f"block{i + 1}", "block", (0.07, 0.07),
                   Vec3(x, 0.0, 0.70 + 0.05 * (i % 3)))
    props = [d.props[f"block{i + 1}"] for i in range(objects)]
    for _ in range(frames):
        for p in props:
            p.pos = Vec3(
                min(0.42, max(-0.42, p.pos.x + rng.uniform(-0.015, 0.015))),
                0.0,
                min(1.10, max(0.55, p.pos.z + rng.uniform(-0.008, 0.008))),
            )
        d.emit()
    d.truth("eventCount", {"match": {"kind": "ObjectAppeared"}, "count": objects})
    d.truth("eventCount", {"match": {"kind": "ObjectHidden"}, "count": 0})
    d.truth("eventCount", {"match": {"kind": "DistanceBandChanged"}, "count": 0})
    d.truth("finalScene", {"index": 0})
    return d.stream(f"random walk bench, {objects} objects (seed={seed})"), cfg


# ---------------------------------------------------------------------------
# focused cycles
# ---------------------------------------------------------------------------

def _lift_cycle_config() -> dict:
    charts = {
        "levels": {
            "chartType": "bar",
            "title": "Reservoir levels",
            "sourceTag": "levels",
            "series": [
                _series("north", ["a", "b", "c"], [3.0, 5.0, 4.0]),
                _series("south", ["a", "b", "c"], [2.0, 6.0, 3.0]),
            ],
        },
    }
    scenes = [{
        "name": "lift cycle",
        "enabledCommands": ["ShowHide", "SelectDataSeries"],
        "bindings": [
            {"classLabel": "block", "instanceOrdinal": 1, "chart": "levels",
             "seriesName": "north"},
        ],
    }]
    return _base_config(charts, scenes)


def _lift_cycle(seed: int, objects: int):
    cfg = _lift_cycle_config()
    d = _Director(cfg, seed, "")
    d.add_prop("block", "block", (0.07, 0.07), Vec3(0.0, 0.0, 0.70))
    d.hold(60)

    def cycle(peak, rest_frames):
        d.move("block", Vec3(0.0, peak, 0.70), 10)
        d.hold(15)
        d.move("block", Vec3(0.0, 0.0, 0.70), 10)
        d.hold(rest_frames)

    cycle(0.12, 20)
    # a rise that stays under the on-threshold must not fire
    d.move("block", Vec3(0.0, 0.05, 0.70), 8)
    d.hold(10)
    d.move("block", Vec3(0.0, 0.0, 0.70), 8)
    d.hold(15)
    # re-grab: a dip into the dead zone (between off and on) keeps the lift
    d.move("block", Vec3(0.0, 0.12, 0.70), 10)
    d.move("block", Vec3(0.0, 0.045, 0.70), 8)
    d.move("block", Vec3(0.0, 0.12, 0.70), 8)
    d.hold(12)
    d.move("block", Vec3(0.0, 0.0, 0.70), 10)
    d.hold(20)
    cycle(0.10, 25)

    d.truth("eventCount", {"match": {"kind": "Lifted"}, "count": 3})
    d.truth("eventCount", {"match": {"kind": "Lowered"}, "count": 3})
    d.truth("effectCount", {"match": {"effect": "SelectSeries", "seriesName": "north"},
                            "count": 3})
    d.truth("finalScene", {"index": 0})
    return d.stream(f"lift hysteresis cycles (seed={seed})"), cfg


def _join_split_config() -> dict:
    quarters = ["Q1", "Q2", "Q3", "Q4"]
    charts = {
        "left": {
            "chartType": "bar", "title": "Left block", "sourceTag": "left",
            "series": [_series("value", quarters, [4.0, 6.0, 5.0, 7.0])],
        },
        "right": {
            "chartType": "bar", "title": "Right block", "sourceTag": "right",
            "series": [_series("value", quarters, [3.0, 4.0, 6.0, 5.0])],
        },
    }
    scenes = [{
        "name": "join split cycle",
        "enabledCommands": ["ShowHide", "ComposeDecompose"],
        "bindings": [
            {"classLabel": "block", "instanceOrdinal": 1, "chart": "left"},
            {"classLabel": "block", "instanceOrdinal": 2, "chart": "right"},
        ],
        "compositionRegistry": {
            "horizontal": {"title": "Side by side"},
            "vertical": {"title": "Stacked up"},
        },
    }]
    return _base_config(charts, scenes)


def _join_split(seed: int, objects: int):
    cfg = _join_split_config()
    d = _Director(cfg, seed, "")
    size = (0.07, 0.07)
    home2 = Vec3(0.30, 0.0, 0.70)
    d.add_prop("block1", "block", size, Vec3(-0.05, 0.0, 0.70))
    d.add_prop("block2", "block", size, home2)
    d.hold(60)

    def horizontal_cycle():
        d.move("block2", Vec3(0.05, 0.0, 0.70), 30)
        d.hold(20)
        d.move("block2", home2, 30)
        d.hold(15)

    def vertical_cycle():
        d.move("block2", Vec3(0.30, 0.18, 0.70), 10)
        d.move("block2", Vec3(-0.05, 0.18, 0.70), 30)
        d.move("block2", Vec3(-0.05, 0.07, 0.70), 12)
        d.hold(20)
        d.move("block2", Vec3(-0.05, 0.18, 0.70), 12)
        d.move("block2", Vec3(0.30, 0.18, 0.70), 30)
        d.move("block2", home2, 10)
        d.hold(15)

    horizontal_cycle()
    vertical_cycle()
    horizontal_cycle()

    d.truth("eventCount", {"match": {"kind": "ProximityJoin"}, "count": 3})
    d.truth("eventCount", {"match": {"kind": "ProximityJoin", "orientation": "horizontal"},
                           "count": 2})
    d.truth("eventCount", {"match": {"kind": "ProximityJoin", "orientation": "vertical"},
                           "count": 1})
    d.truth("eventCount", {"match": {"kind": "ProximitySplit"}, "count": 3})
    d.truth("effectCount", {"match": {"effect": "ShowComposite", "composition": "clustered"},
                            "count": 2})
    d.truth("effectCount", {"match": {"effect": "ShowComposite", "composition": "stacked"},
                            "count": 1})
    d.truth("effectCount", {"match": {"effect": "HideComposite"}, "count": 3})
    d.truth("finalScene", {"index": 0})
    return d.stream(f"join/split orientation cycles (seed={seed})"), cfg


SCENARIOS = {
    "wine": _wine,
    "ev": _ev,
    "fruit": _fruit,
    "random-walk": _random_walk,
    "lift-cycle": _lift_cycle,
    "join-split-cycle": _join_split,
}


def generate(scenario: str, seed: int = 7, objects: int = 6):
    """Build a scenario stream.  Returns (TrackStream, config dict)."""
    if scenario not in SCENARIOS:
        raise ValueError(
            f"unknown scenario {scenario!r}; choose from {', '.join(sorted(SCENARIOS))}"
        )
    return SCENARIOS[scenario](seed, objects)
