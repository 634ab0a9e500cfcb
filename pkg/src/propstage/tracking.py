"""Object tracking: frame ingestion, greedy association, table baseline.

The tracker is deliberately simple — class-constrained greedy nearest
neighbour with a distance gate — because upstream detections already carry
3D positions.  Greedy matches the optimal assignment whenever same-class
objects keep more than two gate radii of separation, which the fixtures and
property tests rely on.

Single writer: one Tracker instance belongs to one session; `step` must be
called with strictly increasing frame indices.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .core import ObjectClass, ObjectId, Rect, Vec3


class StreamOrderError(ValueError):
    """Raised when a frame arrives with a non-increasing frameIndex."""


class InsufficientSamples(ValueError):
    """Raised when baseline calibration is attempted with too few frames."""


class BaselineNotCalibrated(RuntimeError):
    """Raised when kinematics are requested before the table baseline exists."""


@dataclass(frozen=True)
class TrackParams:
    gate_radius: float = 0.25          # meters; association gate
    track_loss_frames: int = 15        # frames a track may go unmatched
    calibration_min_samples: int = 30  # qualifying frames for the baseline


@dataclass(frozen=True)
class Detection:
    class_label: ObjectClass
    bbox: Rect
    position: Vec3
    confidence: float = 1.0


@dataclass(frozen=True)
class Hand:
    side: str            # "left" | "right"
    index_tip: tuple     # (x, y) screen px


@dataclass(frozen=True)
class TrackFrame:
    timestamp: float
    frame_index: int
    detections: tuple = ()
    hands: tuple = ()               # tuple[Hand, ...]
    face_box: Rect | None = None
    frame_size: tuple = (1280, 720)


@dataclass(frozen=True)
class TrackedObject:
    """Snapshot of a live track after a step.

    ``height_above_table`` is None until the baseline is calibrated;
    ``displacement`` is the 3D distance moved since the previous frame
    (0.0 on birth and while coasting unmatched).
    """

    id: ObjectId
    class_label: ObjectClass
    bbox: Rect
    position: Vec3
    last_seen_frame: int
    instance_ordinal: int
    camera_distance: float
    displacement: float
    height_above_table: float | None = None


@dataclass(frozen=True)
class TableBaseline:
    baseline_y: float | None
    calibrated: bool
    sample_count: int


@dataclass(frozen=True)
class KinematicState:
    height_above_table: float
    camera_distance: float
    displacement_since_last_frame: float


@dataclass(frozen=True)
class AssociationResult:
    tracks: tuple            # tuple[TrackedObject, ...] sorted by id
    births: tuple            # tuple[ObjectId, ...] in detection order
    deaths: tuple            # tuple[ObjectId, ...] ascending


def calibrate_baseline(frames, params: TrackParams = TrackParams()) -> TableBaseline:
    """Median of per-frame minimum detection height over the first
    ``calibration_min_samples`` qualifying frames (frames with no detections
    do not qualify)."""
    samples = []
    for f in frames:
        if not f.detections:
            continue
        samples.append(min(d.position.y for d in f.detections))
        if len(samples) >= params.calibration_min_samples:
            break
    if len(samples) < params.calibration_min_samples:
        raise InsufficientSamples(
            f"baseline needs {params.calibration_min_samples} frames with "
            f"detections, got {len(samples)}"
        )
    return TableBaseline(
        baseline_y=float(statistics.median(samples)),
        calibrated=True,
        sample_count=len(samples),
    )


def kinematics(track: TrackedObject, baseline: TableBaseline) -> KinematicState:
    if not baseline.calibrated:
        raise BaselineNotCalibrated("table baseline has not been calibrated")
    return KinematicState(
        height_above_table=track.position.y - baseline.baseline_y,
        camera_distance=track.position.z,
        displacement_since_last_frame=track.displacement,
    )


class _Track:
    __slots__ = (
        "id", "class_label", "bbox", "position", "prev_position",
        "last_seen", "ordinal",
    )

    def __init__(self, id, class_label, bbox, position, frame_index, ordinal):
        self.id = id
        self.class_label = class_label
        self.bbox = bbox
        self.position = position
        self.prev_position = position
        self.last_seen = frame_index
        self.ordinal = ordinal


class Tracker:
    """Stateful frame-to-frame associator.

    Ids increase monotonically and are never reused.  Instance ordinals are
    per-class and unique among live tracks: a birth takes the lowest
    unoccupied ordinal of its class, so losing track #2 of "car" and
    re-detecting it hands the ordinal 2 back.
    """

    def __init__(self, params: TrackParams = TrackParams()):
        self.params = params
        self._tracks: list[_Track] = []
        self._next_id = 1
        self._last_frame_index: int | None = None
        self._baseline_samples: list[float] = []
        self._baseline: TableBaseline = TableBaseline(None, False, 0)

    @property
    def baseline(self) -> TableBaseline:
        return self._baseline

    def step(self, frame: TrackFrame) -> AssociationResult:
        if self._last_frame_index is not None and frame.frame_index <= self._last_frame_index:
            raise StreamOrderError(
                f"frameIndex {frame.frame_index} after {self._last_frame_index}"
            )
        self._last_frame_index = frame.frame_index

        dets = list(frame.detections)
        # Candidate (distance, track, detection) pairs within the gate,
        # same class only; sorted ascending so closest pairs claim first.
        pairs = []
        for ti, tr in enumerate(self._tracks):
            for di, det in enumerate(dets):
                if det.class_label != tr.class_label:
                    continue
                d = tr.position.distance_to(det.position)
                if d <= self.params.gate_radius:
                    pairs.append((d, ti, di))
        pairs.sort(key=lambda p: (p[0], self._tracks[p[1]].id, p[2]))

        matched_t: set = set()
        matched_d: set = set()
        for d, ti, di in pairs:
            if ti in matched_t or di in matched_d:
                continue
            matched_t.add(ti)
            matched_d.add(di)
            tr = self._tracks[ti]
            tr.prev_position = tr.position
            tr.position = dets[di].position
            tr.bbox = dets[di].bbox
            tr.last_seen = frame.frame_index

        # Coasting tracks hold their position; displacement reads as zero.
        for ti, tr in enumerate(self._tracks):
            if ti not in matched_t:
                tr.prev_position = tr.position

        # Births, in detection order, with fresh ids.
        births = []
        for di, det in enumerate(dets):
            if di in matched_d:
                continue
            tr = _Track(
                id=self._next_id,
                class_label=det.class_label,
                bbox=det.bbox,
                position=det.position,
                frame_index=frame.frame_index,
                ordinal=self._lowest_free_ordinal(det.class_label),
            )
            self._next_id += 1
            self._tracks.append(tr)
            births.append(tr.id)

        # Deaths: unmatched for more than track_loss_frames.
        deaths = []
        survivors = []
        for tr in self._tracks:
            if frame.frame_index - tr.last_seen > self.params.track_loss_frames:
                deaths.append(tr.id)
            else:
                survivors.append(tr)
        self._tracks = survivors
        deaths.sort()

        self._feed_baseline(dets)

        snapshots = tuple(self._snapshot(tr) for tr in sorted(self._tracks, key=lambda t: t.id))
        return AssociationResult(tracks=snapshots, births=tuple(births), deaths=tuple(deaths))

    def _lowest_free_ordinal(self, class_label: ObjectClass) -> int:
        used = {t.ordinal for t in self._tracks if t.class_label == class_label}
        n = 1
        while n in used:
            n += 1
        return n

    def _feed_baseline(self, dets) -> None:
        if self._baseline.calibrated or not dets:
            return
        self._baseline_samples.append(min(d.position.y for d in dets))
        if len(self._baseline_samples) >= self.params.calibration_min_samples:
            self._baseline = TableBaseline(
                baseline_y=float(statistics.median(self._baseline_samples)),
                calibrated=True,
                sample_count=len(self._baseline_samples),
            )

    def _snapshot(self, tr: _Track) -> TrackedObject:
        height = None
        if self._baseline.calibrated:
            height = tr.position.y - self._baseline.baseline_y
        return TrackedObject(
            id=tr.id,
            class_label=tr.class_label,
            bbox=tr.bbox,
            position=tr.position,
            last_seen_frame=tr.last_seen,
            instance_ordinal=tr.ordinal,
            camera_distance=tr.position.z,
            displacement=tr.position.distance_to(tr.prev_position),
            height_above_table=height,
        )
