"""Chart instances: composition, swapping, hit testing, mark geometry.

A VisInstance is one on-screen chart anchored to a physical object (or to a
pair of objects for composites).  Mark geometry is abstract but fully
deterministic — bars are laid out in linear bands, pies/donuts in angular
sectors, radar/line as vertex squares — so hit tests and logs do not depend
on any real renderer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .core import ChartSpec, Rect

COMPOSE_CLUSTERED = "clustered"
COMPOSE_STACKED = "stacked"
COMPOSE_OVERLAY = "overlay"

# Square hit-target side for point-like marks (line vertices, sector
# centroids, radar vertices).  Bars use the bar rectangle itself.
MARK_SIDE = 12.0

# Fraction of a category band left as gap (split between both sides).
BAND_PAD_FRACTION = 0.1

# Donut hole radius as a fraction of the outer radius.
DONUT_HOLE_FRACTION = 0.45


class IncompatibleCharts(ValueError):
    """Raised when composing charts of different chartTypes."""


class NotComposite(ValueError):
    """Raised when decomposing a chart that was never composed."""


@dataclass
class VisInstance:
    vis_id: int
    spec: ChartSpec
    anchor: object                      # ObjectId, or (ObjectId, ObjectId)
    highlight_series: frozenset = frozenset()
    highlight_points: frozenset = frozenset()   # {(series, category)}
    scale: float = 1.0
    placed_rect: Rect | None = None
    mark_rects: tuple = ()              # ((series, category, Rect), ...)
    composition: str | None = None      # clustered | stacked | overlay
    members: tuple | None = None        # pre-composition instances

    @property
    def is_composite(self) -> bool:
        return self.members is not None


def scale_for_distance(
    camera_distance: float,
    ref_distance: float = 0.7,
    scale_min: float = 0.5,
    scale_max: float = 2.5,
) -> float:
    """Inverse-linear size factor: marks grow as the object nears the camera."""
    if camera_distance <= 0:
        return scale_max
    return max(scale_min, min(scale_max, ref_distance / camera_distance))


def compose(a: VisInstance, b: VisInstance, orientation: str, vis_id: int,
            title: str | None = None) -> VisInstance:
    """Build the composite chart for a proximity join.

    bar+bar joins honour the physical arrangement: a horizontal join clusters,
    a vertical join stacks.  Everything else overlays same-type charts.
    Cross-type pairs are never composable.
    """
    if a.spec.chart_type != b.spec.chart_type:
        raise IncompatibleCharts(
            f"cannot compose {a.spec.chart_type} with {b.spec.chart_type}"
        )
    if a.spec.chart_type == "bar":
        mode = COMPOSE_STACKED if orientation == "vertical" else COMPOSE_CLUSTERED
    else:
        mode = COMPOSE_OVERLAY
    spec = ChartSpec(
        chart_type=a.spec.chart_type,
        title=title if title is not None else f"{a.spec.title} + {b.spec.title}",
        source_tag=f"{a.spec.source_tag}+{b.spec.source_tag}",
        series=a.spec.series + b.spec.series,
    )
    return VisInstance(
        vis_id=vis_id,
        spec=spec,
        anchor=(a.anchor, b.anchor),
        composition=mode,
        members=(a, b),
    )


def decompose(c: VisInstance) -> tuple:
    """Return the original member instances.  Highlights acquired while
    composed map back to the member owning that series (first member wins a
    name collision)."""
    if not c.is_composite:
        raise NotComposite(f"vis {c.vis_id} is not a composite")
    a, b = c.members

    extra_series = {m.vis_id: set() for m in (a, b)}
    extra_points = {m.vis_id: set() for m in (a, b)}
    for s in c.highlight_series:
        owner = a if a.spec.series_named(s) is not None else b
        extra_series[owner.vis_id].add(s)
    for s, cat in c.highlight_points:
        owner = a if a.spec.series_named(s) is not None else b
        extra_points[owner.vis_id].add((s, cat))

    out = []
    for m in (a, b):
        out.append(replace(
            m,
            highlight_series=frozenset(m.highlight_series | extra_series[m.vis_id]),
            highlight_points=frozenset(m.highlight_points | extra_points[m.vis_id]),
        ))
    return tuple(out)


def apply_swap(v: VisInstance, new_spec: ChartSpec) -> VisInstance:
    """Replace the spec in place of the old one; anchor, scale and screen
    position survive, highlights do not (the data space changed).  Serves
    both chart-type changes and data-source changes."""
    return replace(
        v,
        spec=new_spec,
        highlight_series=frozenset(),
        highlight_points=frozenset(),
    )


def hit_test(v: VisInstance, point, snap_radius: float = 24.0):
    """Nearest mark whose center lies within snap_radius of ``point``;
    ties break lexicographically by (series, category).  None if nothing
    is close enough."""
    px, py = float(point[0]), float(point[1])
    best = None
    for series, cat, r in v.mark_rects:
        d = math.hypot(r.cx - px, r.cy - py)
        if d <= snap_radius:
            k = (d, series, cat)
            if best is None or k < best[0]:
                best = (k, series, cat)
    if best is None:
        return None
    return (best[1], best[2])


# ---------------------------------------------------------------------------
# mark geometry
# ---------------------------------------------------------------------------

def mark_rects(spec: ChartSpec, rect: Rect, composition: str | None = None) -> tuple:
    """Deterministic per-mark hit rectangles for a chart drawn inside
    ``rect``.  Missing categories produce no mark (they draw as gaps or
    zero-height bars); a present zero value still gets its degenerate mark."""
    if spec.chart_type == "bar":
        if composition == COMPOSE_STACKED:
            return _stacked_bar_marks(spec, rect)
        return _bar_marks(spec, rect)
    if spec.chart_type == "line":
        return _line_marks(spec, rect)
    if spec.chart_type in ("pie", "donut"):
        return _radial_marks(spec, rect)
    if spec.chart_type == "radar":
        return _radar_marks(spec, rect)
    raise ValueError(f"unknown chartType {spec.chart_type!r}")


def _point_mark(cx: float, cy: float) -> Rect:
    return Rect(cx - MARK_SIDE / 2, cy - MARK_SIDE / 2, MARK_SIDE, MARK_SIDE)


def _value_max(spec: ChartSpec) -> float:
    vmax = 0.0
    for s in spec.series:
        for _, v in s.points:
            vmax = max(vmax, v)
    return vmax if vmax > 0 else 1.0


def _bar_marks(spec: ChartSpec, rect: Rect) -> tuple:
    """Plain and clustered bars: category bands along x, one sub-band per
    series inside each band.  The mark is the bar rectangle itself."""
    cats = spec.category_union()
    if not cats:
        return ()
    vmax = _value_max(spec)
    nseries = len(spec.series)
    band_w = rect.w / len(cats)
    inner_w = band_w * (1.0 - 2 * BAND_PAD_FRACTION)
    bar_w = inner_w / nseries
    out = []
    for si, s in enumerate(spec.series):
        for ci, cat in enumerate(cats):
            v = s.value_for(cat)
            if v is None:
                continue
            h = max(v, 0.0) / vmax * rect.h
            x = rect.x + ci * band_w + band_w * BAND_PAD_FRACTION + si * bar_w
            out.append((s.name, cat, Rect(x, rect.bottom - h, bar_w, h)))
    return tuple(out)


def _stacked_bar_marks(spec: ChartSpec, rect: Rect) -> tuple:
    """Stacked bars: segments pile up per category in series order; the y
    scale is the largest category total."""
    cats = spec.category_union()
    if not cats:
        return ()
    totals = []
    for cat in cats:
        t = 0.0
        for s in spec.series:
            v = s.value_for(cat)
            if v is not None:
                t += max(v, 0.0)
        totals.append(t)
    tmax = max(totals) if max(totals, default=0.0) > 0 else 1.0
    band_w = rect.w / len(cats)
    inner_w = band_w * (1.0 - 2 * BAND_PAD_FRACTION)
    out = []
    cum = [0.0] * len(cats)  # stacked height so far, per category
    for s in spec.series:
        for ci, cat in enumerate(cats):
            v = s.value_for(cat)
            if v is None:
                continue
            h = max(v, 0.0) / tmax * rect.h
            x = rect.x + ci * band_w + band_w * BAND_PAD_FRACTION
            out.append((s.name, cat, Rect(x, rect.bottom - cum[ci] - h, inner_w, h)))
            cum[ci] += h
    return tuple(out)


def _line_marks(spec: ChartSpec, rect: Rect) -> tuple:
    cats = spec.category_union()
    if not cats:
        return ()
    vmax = _value_max(spec)
    band_w = rect.w / len(cats)
    out = []
    for s in spec.series:
        for ci, cat in enumerate(cats):
            v = s.value_for(cat)
            if v is None:
                continue  # gap
            cx = rect.x + (ci + 0.5) * band_w
            cy = rect.bottom - max(v, 0.0) / vmax * rect.h
            out.append((s.name, cat, _point_mark(cx, cy)))
    return tuple(out)


def _radial_marks(spec: ChartSpec, rect: Rect) -> tuple:
    """Pie and donut sectors.  Angles start at 12 o'clock and run clockwise;
    with multiple series (overlay composites) each series takes its own
    concentric ring, outermost first."""
    cx, cy = rect.cx, rect.cy
    outer = min(rect.w, rect.h) / 2.0
    hole = outer * DONUT_HOLE_FRACTION if spec.chart_type == "donut" else 0.0
    nseries = len(spec.series)
    ring_w = (outer - hole) / nseries
    out = []
    for si, s in enumerate(spec.series):
        total = sum(max(v, 0.0) for _, v in s.points)
        if total <= 0:
            continue
        r_out = outer - si * ring_w
        r_in = r_out - ring_w
        r_mid = (r_in + r_out) / 2.0
        angle = -90.0
        for cat, v in s.points:
            span = max(v, 0.0) / total * 360.0
            mid = math.radians(angle + span / 2.0)
            out.append((
                s.name, cat,
                _point_mark(cx + r_mid * math.cos(mid), cy + r_mid * math.sin(mid)),
            ))
            angle += span
    return tuple(out)


def _radar_marks(spec: ChartSpec, rect: Rect) -> tuple:
    """Radar vertices: one spoke per category, clockwise from the top;
    vertex radius is proportional to the value."""
    cats = spec.category_union()
    if not cats:
        return ()
    vmax = _value_max(spec)
    cx, cy = rect.cx, rect.cy
    radius = min(rect.w, rect.h) / 2.0
    out = []
    for s in spec.series:
        for ci, cat in enumerate(cats):
            v = s.value_for(cat)
            if v is None:
                continue
            ang = math.radians(-90.0 + 360.0 * ci / len(cats))
            r = max(v, 0.0) / vmax * radius
            out.append((s.name, cat, _point_mark(cx + r * math.cos(ang), cy + r * math.sin(ang))))
    return tuple(out)
