"""Shared value types: geometry, chart specifications, command vocabulary.

Everything here is immutable plain data.  The wire encodings (``to_jsonable`` /
``from_jsonable``) are the single source of truth for how these values appear
in stream files, config files and logs; docs/schema.md lists the stable names.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# Object identity: ids are small ints handed out by the tracker, never reused
# within a session.  Class labels are exact strings from the detector's label
# set (configuration-supplied, e.g. COCO-style names).
ObjectId = int
ObjectClass = str

CHART_TYPES = ("bar", "line", "pie", "donut", "radar")

# Chart types that carry angular (sector) geometry rather than banded geometry.
RADIAL_TYPES = ("pie", "donut")


class VisCommand(str, Enum):
    """The nine visualization command kinds a scene can enable."""

    SHOW_HIDE = "ShowHide"
    SCALE = "Scale"
    COMPOSE_DECOMPOSE = "ComposeDecompose"
    SELECT_DATA_POINT = "SelectDataPoint"
    SELECT_DATA_SERIES = "SelectDataSeries"
    CHANGE_CHART_TYPE = "ChangeChartType"
    CHANGE_DATA_SOURCE = "ChangeDataSource"
    HIERARCHICAL_NAVIGATION = "HierarchicalNavigation"
    ANNOTATION = "Annotation"


COMMAND_NAMES = frozenset(c.value for c in VisCommand)


@dataclass(frozen=True)
class Vec3:
    """Camera-centred position in meters; y is height once a table baseline
    is calibrated, z is distance along the optical axis."""

    x: float
    y: float
    z: float

    def distance_to(self, other: "Vec3") -> float:
        return math.sqrt(
            (self.x - other.x) ** 2
            + (self.y - other.y) ** 2
            + (self.z - other.z) ** 2
        )

    def to_jsonable(self) -> list:
        return [self.x, self.y, self.z]

    @staticmethod
    def from_jsonable(v: list) -> "Vec3":
        if not isinstance(v, (list, tuple)) or len(v) != 3:
            raise ValueError("Vec3 must be a [x, y, z] triple")
        return Vec3(float(v[0]), float(v[1]), float(v[2]))


@dataclass(frozen=True)
class Rect:
    """Screen-space rectangle in pixels, origin at the top-left corner."""

    x: float
    y: float
    w: float
    h: float

    @property
    def right(self) -> float:
        return self.x + self.w

    @property
    def bottom(self) -> float:
        return self.y + self.h

    @property
    def cx(self) -> float:
        return self.x + self.w / 2.0

    @property
    def cy(self) -> float:
        return self.y + self.h / 2.0

    @property
    def area(self) -> float:
        return self.w * self.h

    def contains(self, px: float, py: float) -> bool:
        return self.x <= px <= self.right and self.y <= py <= self.bottom

    def to_jsonable(self) -> list:
        return [self.x, self.y, self.w, self.h]

    @staticmethod
    def from_jsonable(v: list) -> "Rect":
        if not isinstance(v, (list, tuple)) or len(v) != 4:
            raise ValueError("Rect must be a [x, y, w, h] quadruple")
        return Rect(float(v[0]), float(v[1]), float(v[2]), float(v[3]))


def rect_overlap_area(a: Rect, b: Rect) -> float:
    """Intersection area of two rects in px^2 (0.0 when disjoint)."""
    ox = min(a.right, b.right) - max(a.x, b.x)
    oy = min(a.bottom, b.bottom) - max(a.y, b.y)
    if ox <= 0.0 or oy <= 0.0:
        return 0.0
    return ox * oy


@dataclass(frozen=True)
class DataSeries:
    """A named series of (category, value) points."""

    name: str
    points: tuple = ()  # tuple[(category: str, value: float), ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "points",
            tuple((str(c), float(v)) for c, v in self.points),
        )
        for _, v in self.points:
            if not math.isfinite(v):
                raise ValueError(f"series {self.name!r}: non-finite value {v!r}")
        cats = [c for c, _ in self.points]
        if len(set(cats)) != len(cats):
            raise ValueError(f"series {self.name!r}: duplicate category labels")

    def categories(self) -> list:
        return [c for c, _ in self.points]

    def value_for(self, category: str):
        for c, v in self.points:
            if c == category:
                return v
        return None

    def to_jsonable(self) -> dict:
        return {"name": self.name, "points": [[c, v] for c, v in self.points]}

    @staticmethod
    def from_jsonable(d: dict) -> "DataSeries":
        return DataSeries(name=str(d["name"]), points=tuple((p[0], p[1]) for p in d["points"]))


@dataclass(frozen=True)
class ChartSpec:
    """A renderable chart definition.

    ``detail_variant`` is an optional richer spec shown when the bound object
    is carried into the near distance band; it must describe the same data
    source (same ``source_tag``).
    """

    chart_type: str
    title: str
    source_tag: str
    series: tuple = ()  # tuple[DataSeries, ...]
    detail_variant: "ChartSpec | None" = None

    def __post_init__(self):
        if self.chart_type not in CHART_TYPES:
            raise ValueError(f"unknown chartType {self.chart_type!r}")
        if not self.series:
            raise ValueError(f"chart {self.title!r}: series must be non-empty")
        object.__setattr__(self, "series", tuple(self.series))
        if self.chart_type in RADIAL_TYPES:
            for s in self.series:
                for c, v in s.points:
                    if v < 0:
                        raise ValueError(
                            f"chart {self.title!r}: {self.chart_type} value for "
                            f"{c!r} must be >= 0"
                        )
        if self.detail_variant is not None and self.detail_variant.source_tag != self.source_tag:
            raise ValueError(
                f"chart {self.title!r}: detailVariant sourceTag "
                f"{self.detail_variant.source_tag!r} != {self.source_tag!r}"
            )

    def series_named(self, name: str):
        for s in self.series:
            if s.name == name:
                return s
        return None

    def category_union(self) -> list:
        """Categories across all series, first-appearance order."""
        seen: list = []
        for s in self.series:
            for c, _ in s.points:
                if c not in seen:
                    seen.append(c)
        return seen

    def to_jsonable(self) -> dict:
        d = {
            "chartType": self.chart_type,
            "title": self.title,
            "sourceTag": self.source_tag,
            "series": [s.to_jsonable() for s in self.series],
        }
        if self.detail_variant is not None:
            d["detailVariant"] = self.detail_variant.to_jsonable()
        return d

    @staticmethod
    def from_jsonable(d: dict) -> "ChartSpec":
        detail = d.get("detailVariant")
        return ChartSpec(
            chart_type=str(d["chartType"]),
            title=str(d["title"]),
            source_tag=str(d["sourceTag"]),
            series=tuple(DataSeries.from_jsonable(s) for s in d["series"]),
            detail_variant=ChartSpec.from_jsonable(detail) if detail else None,
        )
