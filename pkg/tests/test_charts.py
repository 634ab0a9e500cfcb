import math

import pytest

from propstage.charts import (
    COMPOSE_CLUSTERED,
    COMPOSE_OVERLAY,
    COMPOSE_STACKED,
    DONUT_HOLE_FRACTION,
    IncompatibleCharts,
    MARK_SIDE,
    NotComposite,
    VisInstance,
    apply_swap,
    compose,
    decompose,
    hit_test,
    mark_rects,
    scale_for_distance,
)
from propstage.core import ChartSpec, DataSeries, Rect


def bar(title, name, points, source="src"):
    return ChartSpec("bar", title, source, (DataSeries(name, points),))


def vis(spec, vis_id=1, anchor=1):
    return VisInstance(vis_id=vis_id, spec=spec, anchor=anchor)


RECT = Rect(0.0, 0.0, 200.0, 100.0)

SALES_A = bar("A", "A", (("2020", 10.0), ("2021", 20.0)))
SALES_B = bar("B", "B", (("2020", 5.0), ("2021", 5.0)))


# -- composition ----------------------------------------------------------------


def test_horizontal_bar_join_clusters():
    c = compose(vis(SALES_A, 1, anchor=1), vis(SALES_B, 2, anchor=2), "horizontal", vis_id=3)
    assert c.composition == COMPOSE_CLUSTERED
    assert c.is_composite
    assert [s.name for s in c.spec.series] == ["A", "B"]
    assert c.spec.category_union() == ["2020", "2021"]
    assert c.anchor == (1, 2)


def test_vertical_bar_join_stacks():
    c = compose(vis(SALES_A, 1), vis(SALES_B, 2), "vertical", vis_id=3)
    assert c.composition == COMPOSE_STACKED
    # stacked totals, by hand: 2020 -> 15, 2021 -> 25
    totals = {
        cat: sum(s.value_for(cat) or 0.0 for s in c.spec.series)
        for cat in c.spec.category_union()
    }
    assert totals == {"2020": 15.0, "2021": 25.0}


def test_same_type_non_bar_joins_overlay():
    radar1 = ChartSpec("radar", "p1", "src", (DataSeries("p1", (("body", 3.0), ("oak", 4.0))),))
    radar2 = ChartSpec("radar", "p2", "src", (DataSeries("p2", (("body", 5.0), ("oak", 2.0))),))
    for orientation in ("horizontal", "vertical"):
        c = compose(vis(radar1, 1), vis(radar2, 2), orientation, vis_id=3)
        assert c.composition == COMPOSE_OVERLAY
        assert len(c.spec.series) == 2


def test_cross_type_pairs_never_compose():
    pie = ChartSpec("pie", "p", "src", (DataSeries("p", (("a", 1.0),)),))
    with pytest.raises(IncompatibleCharts):
        compose(vis(SALES_A, 1), vis(pie, 2), "horizontal", vis_id=3)


def test_compose_title_and_source_tag():
    c = compose(vis(SALES_A, 1), vis(SALES_B, 2), "horizontal", vis_id=3)
    assert c.spec.title == "A + B"
    assert c.spec.source_tag == "src+src"
    named = compose(vis(SALES_A, 1), vis(SALES_B, 2), "horizontal", vis_id=3,
                    title="Brand A vs Brand B")
    assert named.spec.title == "Brand A vs Brand B"


def test_decompose_returns_original_members():
    a, b = vis(SALES_A, 1), vis(SALES_B, 2)
    c = compose(a, b, "horizontal", vis_id=3)
    out_a, out_b = decompose(c)
    assert out_a.vis_id == 1 and out_a.spec == SALES_A
    assert out_b.vis_id == 2 and out_b.spec == SALES_B


def test_decompose_maps_highlights_to_owning_member():
    c = compose(vis(SALES_A, 1), vis(SALES_B, 2), "horizontal", vis_id=3)
    c.highlight_series = frozenset({"B"})
    c.highlight_points = frozenset({("A", "2021")})
    out_a, out_b = decompose(c)
    assert out_a.highlight_series == frozenset()
    assert out_b.highlight_series == {"B"}
    assert out_a.highlight_points == {("A", "2021")}
    assert out_b.highlight_points == frozenset()


def test_decompose_rejects_plain_charts():
    with pytest.raises(NotComposite):
        decompose(vis(SALES_A, 1))


def test_apply_swap_keeps_screen_state_drops_highlights():
    v = vis(SALES_A, 1)
    v.placed_rect = Rect(10, 10, 100, 80)
    v.scale = 1.5
    v.highlight_series = frozenset({"A"})
    swapped = apply_swap(v, SALES_B)
    assert swapped.spec == SALES_B
    assert swapped.placed_rect == Rect(10, 10, 100, 80)
    assert swapped.scale == 1.5
    assert swapped.anchor == 1
    assert swapped.highlight_series == frozenset()


# -- scale ----------------------------------------------------------------------


def test_scale_reference_distance_is_unity():
    assert scale_for_distance(0.7) == 1.0


def test_scale_monotone_non_increasing_over_distance_grid():
    samples = [0.3 + i * 0.05 for i in range(19)]  # 0.3 .. 1.2
    scales = [scale_for_distance(d) for d in samples]
    for a, b in zip(scales, scales[1:]):
        assert a >= b


def test_scale_clamps_at_both_ends():
    assert scale_for_distance(0.1) == 2.5
    assert scale_for_distance(10.0) == 0.5
    assert scale_for_distance(0.0) == 2.5
    assert scale_for_distance(-1.0) == 2.5


# -- mark geometry ---------------------------------------------------------------


def test_clustered_bar_marks_frozen_geometry():
    spec = ChartSpec("bar", "c", "src", SALES_A.series + SALES_B.series)
    marks = dict(((s, c), r) for s, c, r in mark_rects(spec, RECT))
    # band width 100, pad 10 each side, two series -> bar width 40; vmax 20
    assert marks[("A", "2020")] == Rect(10.0, 50.0, 40.0, 50.0)
    assert marks[("A", "2021")] == Rect(110.0, 0.0, 40.0, 100.0)
    assert marks[("B", "2020")] == Rect(50.0, 75.0, 40.0, 25.0)
    assert marks[("B", "2021")] == Rect(150.0, 75.0, 40.0, 25.0)


def test_stacked_bar_marks_frozen_geometry():
    spec = ChartSpec("bar", "s", "src", SALES_A.series + SALES_B.series)
    marks = mark_rects(spec, RECT, composition=COMPOSE_STACKED)
    by_key = dict(((s, c), r) for s, c, r in marks)
    # category totals 15 and 25; the 2021 stack spans the full height
    assert by_key[("A", "2020")] == Rect(10.0, 60.0, 80.0, 40.0)
    assert by_key[("B", "2020")] == Rect(10.0, 40.0, 80.0, 20.0)
    assert by_key[("A", "2021")] == Rect(110.0, 20.0, 80.0, 80.0)
    assert by_key[("B", "2021")] == Rect(110.0, 0.0, 80.0, 20.0)
    stack_2021 = by_key[("A", "2021")].h + by_key[("B", "2021")].h
    assert stack_2021 == RECT.h  # 25/25 of the scale
    assert by_key[("B", "2021")].y == 0.0  # the tallest stack tops out flush


def test_bar_missing_category_is_a_gap_zero_is_degenerate():
    spec = ChartSpec(
        "bar", "g", "src",
        (
            DataSeries("A", (("x", 0.0), ("y", 4.0))),
            DataSeries("B", (("y", 2.0),)),   # no "x" point at all
        ),
    )
    marks = mark_rects(spec, RECT)
    keys = {(s, c) for s, c, _ in marks}
    assert ("B", "x") not in keys           # gap: no mark
    zero = next(r for s, c, r in marks if (s, c) == ("A", "x"))
    assert zero.h == 0.0                    # present zero: degenerate mark
    assert zero.bottom == RECT.bottom


def test_line_marks_frozen_geometry():
    spec = ChartSpec("line", "l", "src", (DataSeries("A", (("2020", 0.0), ("2021", 20.0))),))
    marks = dict(((s, c), r) for s, c, r in mark_rects(spec, RECT))
    half = MARK_SIDE / 2
    assert marks[("A", "2020")] == Rect(50.0 - half, 100.0 - half, MARK_SIDE, MARK_SIDE)
    assert marks[("A", "2021")] == Rect(150.0 - half, 0.0 - half, MARK_SIDE, MARK_SIDE)


def test_pie_sector_centroids_frozen_geometry():
    spec = ChartSpec("pie", "p", "src",
                     (DataSeries("p", (("a", 10.0), ("b", 10.0), ("c", 20.0))),))
    square = Rect(0, 0, 100, 100)
    marks = {c: r for _, c, r in mark_rects(spec, square)}
    # sectors start at 12 o'clock, clockwise: spans 90/90/180 degrees,
    # centroids at mid-angles -45, +45, +180 on the r=25 mid-ring
    d = 25.0 / math.sqrt(2.0)
    assert marks["a"].cx == pytest.approx(50.0 + d)
    assert marks["a"].cy == pytest.approx(50.0 - d)
    assert marks["b"].cx == pytest.approx(50.0 + d)
    assert marks["b"].cy == pytest.approx(50.0 + d)
    assert marks["c"].cx == pytest.approx(25.0)
    assert marks["c"].cy == pytest.approx(50.0)


def test_donut_ring_differs_from_pie():
    series = (DataSeries("p", (("a", 10.0), ("b", 30.0))),)
    square = Rect(0, 0, 100, 100)
    pie_marks = {c: r for _, c, r in mark_rects(ChartSpec("pie", "p", "src", series), square)}
    donut_marks = {c: r for _, c, r in mark_rects(ChartSpec("donut", "d", "src", series), square)}
    # donut centroids sit on the (hole+outer)/2 ring, strictly outside the pie's
    hole = 50.0 * DONUT_HOLE_FRACTION
    donut_mid = (hole + 50.0) / 2.0
    for cat in ("a", "b"):
        rp = math.hypot(pie_marks[cat].cx - 50, pie_marks[cat].cy - 50)
        rd = math.hypot(donut_marks[cat].cx - 50, donut_marks[cat].cy - 50)
        assert rp == pytest.approx(25.0)
        assert rd == pytest.approx(donut_mid)
        assert rd > rp


def test_overlay_radial_series_take_concentric_rings():
    spec = ChartSpec("pie", "o", "src", (
        DataSeries("s1", (("a", 1.0),)),
        DataSeries("s2", (("a", 1.0),)),
    ))
    square = Rect(0, 0, 100, 100)
    rings = {s: math.hypot(r.cx - 50, r.cy - 50) for s, _, r in mark_rects(spec, square)}
    assert rings["s1"] == pytest.approx(37.5)  # outer ring, width 25
    assert rings["s2"] == pytest.approx(12.5)  # inner ring


def test_radar_vertices_frozen_geometry():
    spec = ChartSpec("radar", "r", "src",
                     (DataSeries("r", (("a", 4.0), ("b", 8.0), ("c", 8.0), ("d", 8.0))),))
    square = Rect(0, 0, 100, 100)
    marks = {c: (r.cx, r.cy) for _, c, r in mark_rects(spec, square)}
    # spokes clockwise from the top at 90-degree steps; vmax 8 -> radius 50
    assert marks["a"] == (pytest.approx(50.0), pytest.approx(25.0))
    assert marks["b"] == (pytest.approx(100.0), pytest.approx(50.0))
    assert marks["c"] == (pytest.approx(50.0), pytest.approx(100.0))
    assert marks["d"] == (pytest.approx(0.0), pytest.approx(50.0))


def test_all_zero_values_still_lay_out():
    spec = ChartSpec("bar", "z", "src", (DataSeries("z", (("a", 0.0), ("b", 0.0))),))
    marks = mark_rects(spec, RECT)
    assert len(marks) == 2
    assert all(r.h == 0.0 for _, _, r in marks)


def test_empty_category_union_yields_no_marks():
    spec = ChartSpec("line", "e", "src", (DataSeries("e", ()),))
    assert mark_rects(spec, RECT) == ()


# -- hit testing ------------------------------------------------------------------


def hit_fixture():
    v = vis(SALES_A, 1)
    v.mark_rects = (
        ("a", "x", Rect(94.0, 94.0, 12.0, 12.0)),    # centre (100, 100)
        ("b", "x", Rect(134.0, 94.0, 12.0, 12.0)),   # centre (140, 100)
    )
    return v


def test_hit_test_nearest_mark():
    v = hit_fixture()
    assert hit_test(v, (102.0, 101.0)) == ("a", "x")
    assert hit_test(v, (139.0, 99.0)) == ("b", "x")


def test_hit_test_equidistant_prefers_smaller_key():
    v = hit_fixture()
    # (120, 100) is exactly 20 px from both centres
    assert hit_test(v, (120.0, 100.0)) == ("a", "x")


def test_hit_test_respects_snap_radius():
    v = hit_fixture()
    assert hit_test(v, (100.0, 130.0)) is None             # 30 px > default 24
    assert hit_test(v, (100.0, 130.0), snap_radius=32.0) == ("a", "x")
    assert hit_test(v, (100.0, 123.9)) == ("a", "x")       # just inside
    assert hit_test(v, (300.0, 300.0)) is None
