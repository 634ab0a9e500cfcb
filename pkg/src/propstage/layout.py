"""Greedy label/chart placement around physical anchors.

Each chart gets eight candidate rects at compass positions adjacent to its
anchor (N, NE, E, SE, S, SW, W, NW — clockwise from north), clamped into the
frame.  Candidates are scored by occlusion penalties (presenter's face,
object boxes, charts already placed) plus a top-side reward and a temporal
consistency reward; the greedy argmax per chart in ascending vis order is
exhaustive over the 8 candidates, so the oracle re-check is cheap.

Overlap penalties are measured in units of 1000 px^2 so default weights stay
near 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Rect, rect_overlap_area

COMPASS = ("N", "NE", "E", "SE", "S", "SW", "W", "NW")


@dataclass(frozen=True)
class LayoutWeights:
    w_face: float = 4.0       # penalty per 1000 px^2 of face overlap
    w_object: float = 2.0     # penalty per 1000 px^2 of object-box overlap
    w_vis: float = 2.0        # penalty per 1000 px^2 of chart-chart overlap
    w_top: float = 1.0        # reward for the north candidate
    w_prev: float = 2.0       # reward scale for staying near last frame
    smoothing_alpha: float = 0.25
    margin: float = 12.0      # px gap between anchor and candidate


@dataclass(frozen=True)
class LayoutScene:
    """Everything the scorer can see for one frame."""

    frame_size: tuple                 # (w, h) px
    face_box: Rect | None = None
    object_boxes: tuple = ()          # Rect, ...
    placed_vis: tuple = ()            # Rect, ... (charts placed earlier this pass)
    previous: dict | None = None      # vis key -> Rect (last frame, post-smoothing)


def clamp_rect(r: Rect, frame_size) -> Rect:
    """Force a rect fully inside the frame (shrinking it if it is bigger
    than the frame itself)."""
    fw, fh = float(frame_size[0]), float(frame_size[1])
    w = min(r.w, fw)
    h = min(r.h, fh)
    x = min(max(r.x, 0.0), fw - w)
    y = min(max(r.y, 0.0), fh - h)
    return Rect(x, y, w, h)


def candidates(anchor: Rect, size, frame_size, margin: float = 12.0) -> list:
    """The eight compass candidate rects, clamped into the frame, in the
    fixed COMPASS order (ties in scoring resolve to the earliest)."""
    w, h = float(size[0]), float(size[1])
    m = margin
    cx = anchor.cx
    cy = anchor.cy
    spots = (
        (cx - w / 2,            anchor.y - m - h),      # N
        (anchor.right + m,      anchor.y - m - h),      # NE
        (anchor.right + m,      cy - h / 2),            # E
        (anchor.right + m,      anchor.bottom + m),     # SE
        (cx - w / 2,            anchor.bottom + m),     # S
        (anchor.x - m - w,      anchor.bottom + m),     # SW
        (anchor.x - m - w,      cy - h / 2),            # W
        (anchor.x - m - w,      anchor.y - m - h),      # NW
    )
    return [clamp_rect(Rect(x, y, w, h), frame_size) for x, y in spots]


def score(
    candidate: Rect,
    scene: LayoutScene,
    weights: LayoutWeights,
    is_top: bool = False,
    prev_rect: Rect | None = None,
) -> float:
    s = 0.0
    if scene.face_box is not None:
        s -= weights.w_face * rect_overlap_area(candidate, scene.face_box) / 1000.0
    for ob in scene.object_boxes:
        s -= weights.w_object * rect_overlap_area(candidate, ob) / 1000.0
    for pv in scene.placed_vis:
        s -= weights.w_vis * rect_overlap_area(candidate, pv) / 1000.0
    if is_top:
        s += weights.w_top
    if prev_rect is not None:
        diag = math.hypot(scene.frame_size[0], scene.frame_size[1])
        d = math.hypot(candidate.cx - prev_rect.cx, candidate.cy - prev_rect.cy)
        s += weights.w_prev * max(0.0, 1.0 - d / diag)
    return s


def place(items, scene: LayoutScene, weights: LayoutWeights = LayoutWeights()) -> list:
    """Greedy placement pass.

    ``items`` is an ordered list of (key, anchor_rect, (w, h)); the session
    supplies charts in ascending visId followed by annotations.  Returns
    [(key, Rect), ...] in the same order.  Each placed rect joins the
    occlusion set for the items after it.
    """
    placed = list(scene.placed_vis)
    prev = scene.previous or {}
    out = []
    for key, anchor, size in items:
        working = LayoutScene(
            frame_size=scene.frame_size,
            face_box=scene.face_box,
            object_boxes=scene.object_boxes,
            placed_vis=tuple(placed),
            previous=prev,
        )
        pr = prev.get(key)
        best_rect = None
        best_score = -math.inf
        for idx, cand in enumerate(candidates(anchor, size, scene.frame_size, weights.margin)):
            sc = score(cand, working, weights, is_top=(idx == 0), prev_rect=pr)
            if sc > best_score:  # strict: earliest compass slot wins ties
                best_score = sc
                best_rect = cand
        out.append((key, best_rect))
        placed.append(best_rect)
    return out


def smooth(prev: Rect | None, target: Rect, alpha: float) -> Rect:
    """Linear interpolation toward the target position; sizes change
    immediately.  Positions within half a pixel snap to the target so a
    static scene reaches an exact fixpoint."""
    if prev is None or alpha >= 1.0:
        return target
    nx = prev.x + alpha * (target.x - prev.x)
    ny = prev.y + alpha * (target.y - prev.y)
    if abs(target.x - nx) < 0.5 and abs(target.y - ny) < 0.5:
        return target
    return Rect(nx, ny, target.w, target.h)


def composite_anchor_rect(member_boxes) -> Rect:
    """Synthetic anchor for a composite chart: horizontally centred between
    the member objects, topped at the highest member, sized to their mean.
    The north candidate above this rect is the 'centred above both' spot."""
    boxes = list(member_boxes)
    cx = sum(b.cx for b in boxes) / len(boxes)
    top = min(b.y for b in boxes)
    w = sum(b.w for b in boxes) / len(boxes)
    h = sum(b.h for b in boxes) / len(boxes)
    return Rect(cx - w / 2.0, top, w, h)
