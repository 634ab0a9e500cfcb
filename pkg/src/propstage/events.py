"""Manipulation event detection over tracked objects.

Four hysteresis automata (visibility, lift, pair proximity, distance band)
plus a dwell-based pointing detector.  All transitions are edge-triggered:
a state only emits when it flips, so replaying the same inputs twice never
duplicates events.  Threshold conventions, shared by every automaton:

  * the primary threshold is crossed strictly (``>`` on the way up,
    ``<`` on the way down);
  * the return leg must clear the threshold plus/minus the hysteresis gap.

Events inside one frame are ordered by kind (KIND_ORDER) and then by the
ids they carry, which makes logs byte-stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ObjectId, Rect

KIND_OBJECT_APPEARED = "ObjectAppeared"
KIND_OBJECT_HIDDEN = "ObjectHidden"
KIND_LIFTED = "Lifted"
KIND_LOWERED = "Lowered"
KIND_PROXIMITY_JOIN = "ProximityJoin"
KIND_PROXIMITY_SPLIT = "ProximitySplit"
KIND_POINT_AT_OBJECT = "PointAtObject"
KIND_POINT_AT_VIS = "PointAtVis"
KIND_POINT_DWELL_END = "PointDwellEnd"
KIND_DISTANCE_BAND_CHANGED = "DistanceBandChanged"
KIND_CONDITION_MET = "ConditionMet"
KIND_CONDITION_CLEARED = "ConditionCleared"

KIND_ORDER = (
    KIND_OBJECT_APPEARED,
    KIND_OBJECT_HIDDEN,
    KIND_LIFTED,
    KIND_LOWERED,
    KIND_PROXIMITY_JOIN,
    KIND_PROXIMITY_SPLIT,
    KIND_POINT_AT_OBJECT,
    KIND_POINT_AT_VIS,
    KIND_POINT_DWELL_END,
    KIND_DISTANCE_BAND_CHANGED,
    KIND_CONDITION_MET,
    KIND_CONDITION_CLEARED,
)
_KIND_RANK = {k: i for i, k in enumerate(KIND_ORDER)}

BAND_FAR = "far"
BAND_NORMAL = "normal"
BAND_NEAR = "near"

ORIENT_HORIZONTAL = "horizontal"
ORIENT_VERTICAL = "vertical"


@dataclass(frozen=True)
class EventParams:
    lift_on_height: float = 0.06       # m above table to trigger Lifted
    lift_off_height: float = 0.03      # m to trigger Lowered
    join_distance: float = 0.12        # m; 3D pair distance for Join
    split_distance: float = 0.18       # m; 3D pair distance for Split
    orientation_cutoff_deg: float = 45.0
    dwell_seconds: float = 1.0
    near_band: float = 0.45            # m camera distance
    far_band: float = 1.2
    band_hysteresis: float = 0.05
    stationary_epsilon: float = 0.01   # m/frame
    stationary_window: int = 5         # frames
    snap_radius: float = 24.0          # px, pointing snap to marks
    pointing_hand: str = "right"       # which hand may point


@dataclass(frozen=True)
class ManipulationEvent:
    kind: str
    frame_index: int
    timestamp: float
    object_id: ObjectId | None = None
    other_id: ObjectId | None = None     # pair partner (b) for Join/Split
    orientation: str | None = None       # Join only
    vis_id: int | None = None            # PointAtVis only
    series_name: str | None = None
    category: str | None = None
    band: str | None = None              # DistanceBandChanged only
    condition_id: str | None = None      # Condition* only


def sort_events(events) -> list:
    """Canonical within-frame ordering: kind rank, then carried ids."""
    def key(e: ManipulationEvent):
        return (
            _KIND_RANK[e.kind],
            e.object_id if e.object_id is not None else -1,
            e.other_id if e.other_id is not None else -1,
            e.vis_id if e.vis_id is not None else -1,
            e.condition_id or "",
            e.series_name or "",
            e.category or "",
        )
    return sorted(events, key=key)


@dataclass(frozen=True)
class VisPlacementView:
    """What the pointing detector needs to know about a placed chart:
    last frame's on-screen rect and mark hit boxes."""

    vis_id: int
    rect: Rect
    marks: tuple = ()   # tuple[(series_name, category, Rect), ...]


class EventDetector:
    """Holds all per-id / per-pair automaton state for one scene.

    ``reset()`` wipes the state; the session calls it on scene transitions so
    objects still on the table re-announce themselves and every automaton
    behaves exactly as on a fresh scene entry.
    """

    def __init__(self, params: EventParams = EventParams()):
        self.params = params
        self._visible: dict = {}       # id -> bool (appeared?)
        self._lifted: dict = {}        # id -> bool
        self._stationary: dict = {}    # id -> consecutive stationary frames
        self._age: dict = {}           # id -> frames observed
        self._joined: dict = {}        # (a, b) -> bool
        self._band: dict = {}          # id -> band name
        self._dwell_target: tuple | None = None
        self._dwell_start: float = 0.0
        self._dwell_fired: bool = False

    def reset(self) -> None:
        self.__init__(self.params)

    def is_lifted(self, object_id: ObjectId) -> bool:
        return bool(self._lifted.get(object_id))

    def band_of(self, object_id: ObjectId) -> str | None:
        return self._band.get(object_id)

    def step(
        self,
        tracks,
        hands,
        vis_placements,
        now: float,
        frame_index: int,
        pair_composable=None,
    ) -> list:
        """Run every detector for one frame and return events in canonical
        order.  ``tracks`` are TrackedObject snapshots; ``vis_placements``
        are VisPlacementView for the *previous* frame's on-screen charts;
        ``pair_composable(a, b)`` says whether two tracks are bound to
        composable charts in the current scene (None disables pairing).
        """
        by_id = {t.id: t for t in tracks}
        out: list = []

        def emit(kind, **kw):
            out.append(ManipulationEvent(kind, frame_index, now, **kw))

        self._update_motion(tracks)
        self._detect_visibility(by_id, emit)
        self._detect_lift(by_id, emit)
        self._detect_proximity(by_id, pair_composable, emit)
        self._detect_band(by_id, emit)
        self._detect_pointing(by_id, hands, vis_placements, now, emit)
        self._drop_dead_state(by_id)
        return sort_events(out)

    # -- motion bookkeeping ------------------------------------------------

    def _update_motion(self, tracks) -> None:
        eps = self.params.stationary_epsilon
        for t in tracks:
            self._age[t.id] = self._age.get(t.id, 0) + 1
            if t.displacement <= eps:
                self._stationary[t.id] = self._stationary.get(t.id, 0) + 1
            else:
                self._stationary[t.id] = 0

    def _is_stationary_window(self, object_id: ObjectId) -> bool:
        need = min(self.params.stationary_window, self._age.get(object_id, 0))
        return self._stationary.get(object_id, 0) >= need

    # -- visibility ----------------------------------------------------------

    def _detect_visibility(self, by_id, emit) -> None:
        p = self.params
        for oid in sorted(by_id):
            t = by_id[oid]
            z = t.camera_distance
            if oid not in self._visible:
                # first sighting (birth, or first frame after a scene reset)
                appeared = z <= p.far_band
                self._visible[oid] = appeared
                if appeared:
                    emit(KIND_OBJECT_APPEARED, object_id=oid)
            elif self._visible[oid]:
                if z > p.far_band:
                    self._visible[oid] = False
                    emit(KIND_OBJECT_HIDDEN, object_id=oid)
            else:
                if z < p.far_band - p.band_hysteresis:
                    self._visible[oid] = True
                    emit(KIND_OBJECT_APPEARED, object_id=oid)
        # deaths
        for oid in sorted(self._visible):
            if oid not in by_id and self._visible[oid]:
                self._visible[oid] = False
                emit(KIND_OBJECT_HIDDEN, object_id=oid)

    def is_visible(self, object_id: ObjectId) -> bool:
        return bool(self._visible.get(object_id))

    # -- lift ----------------------------------------------------------------

    def _detect_lift(self, by_id, emit) -> None:
        p = self.params
        for oid in sorted(by_id):
            t = by_id[oid]
            h = t.height_above_table
            if h is None:
                continue  # baseline not calibrated yet
            lifted = self._lifted.get(oid, False)
            if not lifted and h > p.lift_on_height:
                others_still = all(
                    self._is_stationary_window(o)
                    for o in by_id
                    if o != oid and self._visible.get(o)
                )
                if others_still:
                    self._lifted[oid] = True
                    emit(KIND_LIFTED, object_id=oid)
            elif lifted and h < p.lift_off_height:
                self._lifted[oid] = False
                emit(KIND_LOWERED, object_id=oid)

    # -- proximity -----------------------------------------------------------

    def _detect_proximity(self, by_id, pair_composable, emit) -> None:
        p = self.params
        visible_ids = [oid for oid in sorted(by_id) if self._visible.get(oid)]
        eligible = set()
        if pair_composable is not None:
            for i, a in enumerate(visible_ids):
                for b in visible_ids[i + 1:]:
                    if pair_composable(by_id[a], by_id[b]):
                        eligible.add((a, b))

        for a, b in sorted(eligible):
            ta, tb = by_id[a], by_id[b]
            d = ta.position.distance_to(tb.position)
            joined = self._joined.get((a, b), False)
            if not joined and d < p.join_distance:
                self._joined[(a, b)] = True
                emit(
                    KIND_PROXIMITY_JOIN,
                    object_id=a,
                    other_id=b,
                    orientation=self._orientation(ta.bbox, tb.bbox),
                )
            elif joined and d > p.split_distance:
                self._joined[(a, b)] = False
                emit(KIND_PROXIMITY_SPLIT, object_id=a, other_id=b)

        # A joined pair that lost a member (death or distance-hide) splits,
        # keeping Join/Split strictly alternating per pair.
        for key in sorted(self._joined):
            if key in eligible:
                continue
            if self._joined[key]:
                self._joined[key] = False
                emit(KIND_PROXIMITY_SPLIT, object_id=key[0], other_id=key[1])

    def _orientation(self, ra: Rect, rb: Rect) -> str:
        dx = abs(rb.cx - ra.cx)
        dy = abs(rb.cy - ra.cy)
        angle = math.degrees(math.atan2(dy, dx))
        if angle > self.params.orientation_cutoff_deg:
            return ORIENT_VERTICAL
        return ORIENT_HORIZONTAL

    # -- distance band ---------------------------------------------------------

    def _detect_band(self, by_id, emit) -> None:
        p = self.params
        for oid in sorted(by_id):
            z = by_id[oid].camera_distance
            cur = self._band.get(oid)
            if cur is None:
                if z < p.near_band:
                    self._band[oid] = BAND_NEAR
                elif z > p.far_band:
                    self._band[oid] = BAND_FAR
                else:
                    self._band[oid] = BAND_NORMAL
                continue  # no event on first classification
            nxt = None
            if cur == BAND_NORMAL:
                if z < p.near_band:
                    nxt = BAND_NEAR
                elif z > p.far_band:
                    nxt = BAND_FAR
            elif cur == BAND_NEAR:
                if z > p.near_band + p.band_hysteresis:
                    nxt = BAND_NORMAL
            elif cur == BAND_FAR:
                if z < p.far_band - p.band_hysteresis:
                    nxt = BAND_NORMAL
            if nxt is not None and nxt != cur:
                self._band[oid] = nxt
                emit(KIND_DISTANCE_BAND_CHANGED, object_id=oid, band=nxt)

    # -- pointing -------------------------------------------------------------

    def _detect_pointing(self, by_id, hands, vis_placements, now, emit) -> None:
        p = self.params
        tip = None
        for h in hands:
            if h.side == p.pointing_hand:
                tip = h.index_tip
                break

        target = None
        if tip is not None:
            px, py = float(tip[0]), float(tip[1])
            hit = None
            for v in sorted(vis_placements, key=lambda v: v.vis_id):
                if v.rect.contains(px, py):
                    hit = v
                    break
            if hit is not None:
                # charts win over object bboxes underneath
                best = None
                for series, cat, mr in hit.marks:
                    d = math.hypot(mr.cx - px, mr.cy - py)
                    if d <= p.snap_radius:
                        k = (d, series, cat)
                        if best is None or k < best[0]:
                            best = (k, series, cat)
                if best is not None:
                    target = ("mark", hit.vis_id, best[1], best[2])
                else:
                    target = ("chartvoid", hit.vis_id)
            else:
                cand = None
                for oid in sorted(by_id):
                    t = by_id[oid]
                    if not self._visible.get(oid) or self._lifted.get(oid):
                        continue  # a lifted object never annotates itself
                    if t.bbox.contains(px, py):
                        k = (t.bbox.area, oid)
                        if cand is None or k < cand[0]:
                            cand = (k, oid)
                if cand is not None:
                    target = ("object", cand[1])

        if target != self._dwell_target:
            if self._dwell_fired:
                emit(KIND_POINT_DWELL_END)
            self._dwell_target = target
            self._dwell_start = now
            self._dwell_fired = False
            return

        if target is None or self._dwell_fired:
            return
        if now - self._dwell_start >= p.dwell_seconds:
            if target[0] == "object":
                self._dwell_fired = True
                emit(KIND_POINT_AT_OBJECT, object_id=target[1])
            elif target[0] == "mark":
                self._dwell_fired = True
                emit(
                    KIND_POINT_AT_VIS,
                    vis_id=target[1],
                    series_name=target[2],
                    category=target[3],
                )
            # "chartvoid" dwells (inside a chart, near no mark) never fire

    # -- cleanup ----------------------------------------------------------------

    def _drop_dead_state(self, by_id) -> None:
        dead = [oid for oid in self._visible if oid not in by_id]
        for oid in dead:
            self._visible.pop(oid, None)
            self._lifted.pop(oid, None)
            self._stationary.pop(oid, None)
            self._age.pop(oid, None)
            self._band.pop(oid, None)
        if dead:
            gone = set(dead)
            self._joined = {
                k: v for k, v in self._joined.items()
                if k[0] not in gone and k[1] not in gone
            }
