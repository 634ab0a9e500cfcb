/**
 * RenderFrame -> draw plan.
 *
 * Pure translation from a render record to primitive draw operations; the
 * canvas executor in main.ts runs them verbatim and tests assert on them.
 * The engine owns all layout: every placement is drawn exactly in the rect
 * the record gives, never measured, never moved.  The only arithmetic here
 * is presentational — turning series data into bars, arcs, and polygons
 * inside that rect.
 */
import type {
  AnnotationRec,
  ChartRec,
  PlacementRec,
  RectArr,
  RenderRec,
} from "./types.js";

export type DrawOp =
  | {
      op: "rect";
      role: string;
      x: number;
      y: number;
      w: number;
      h: number;
      fill?: string;
      stroke?: string;
      lineWidth?: number;
    }
  | {
      op: "text";
      role: string;
      x: number;
      y: number;
      text: string;
      fill: string;
      font: string;
      align?: "left" | "center" | "right";
    }
  | {
      op: "poly";
      role: string;
      points: [number, number][];
      stroke?: string;
      fill?: string;
      lineWidth?: number;
      close?: boolean;
    }
  | {
      op: "sector";
      role: string;
      cx: number;
      cy: number;
      r: number;
      innerR: number;
      a0: number;
      a1: number;
      fill: string;
      stroke?: string;
      lineWidth?: number;
    }
  | { op: "banner"; role: "banner"; text: string };

export interface PlanOptions {
  frameSize: [number, number];
  presenterView: boolean;
  halted: boolean;
  haltMessage?: string;
}

const PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#76b7b2",
  "#edc948",
  "#9c755f",
];
const HIGHLIGHT = "#ff3366";
const INK = "#1b1f24";
const CARD_BG = "rgba(255,255,255,0.94)";
const TITLE_H = 22;
const FONT = "12px system-ui, sans-serif";
const TITLE_FONT = "bold 13px system-ui, sans-serif";

function color(i: number): string {
  return PALETTE[i % PALETTE.length] as string;
}

function isSeriesHighlighted(chart: ChartRec, name: string): boolean {
  return chart.highlightSeries.includes(name);
}

function isPointHighlighted(chart: ChartRec, series: string, category: string): boolean {
  return chart.highlightPoints.some(([s, c]) => s === series && c === category);
}

// ---------------------------------------------------------------------------
// per-chart-type bodies
// ---------------------------------------------------------------------------

function barOps(p: PlacementRec, ops: DrawOp[]): void {
  const chart = p.chart;
  const names = chart.series.map((s) => s.name);
  for (const [series, category, rect] of p.markRects) {
    const hi = isSeriesHighlighted(chart, series) || isPointHighlighted(chart, series, category);
    const [x, y, w, h] = rect;
    ops.push({
      op: "rect",
      role: "mark",
      x,
      y,
      w,
      h,
      fill: hi ? HIGHLIGHT : color(names.indexOf(series)),
    });
  }
}

function lineOps(p: PlacementRec, ops: DrawOp[]): void {
  const chart = p.chart;
  for (let si = 0; si < chart.series.length; si++) {
    const s = chart.series[si]!;
    const marks = p.markRects.filter(([name]) => name === s.name);
    const centers: [number, number][] = marks.map(
      ([, , r]) => [r[0] + r[2] / 2, r[1] + r[3] / 2],
    );
    const hi = isSeriesHighlighted(chart, s.name);
    if (centers.length > 1) {
      ops.push({
        op: "poly",
        role: "series-line",
        points: centers,
        stroke: hi ? HIGHLIGHT : color(si),
        lineWidth: hi ? 3 : 1.5,
      });
    }
    for (const [, category, r] of marks) {
      const phi = hi || isPointHighlighted(chart, s.name, category);
      ops.push({
        op: "rect",
        role: "mark",
        x: r[0] + r[2] / 2 - 3,
        y: r[1] + r[3] / 2 - 3,
        w: 6,
        h: 6,
        fill: phi ? HIGHLIGHT : color(si),
      });
    }
  }
}

function sectorOps(p: PlacementRec, body: RectArr, donut: boolean, ops: DrawOp[]): void {
  const chart = p.chart;
  const s = chart.series[0];
  if (!s) return;
  const total = s.points.reduce((acc, [, v]) => acc + Math.max(v, 0), 0);
  if (total <= 0) return;
  const [bx, by, bw, bh] = body;
  const cx = bx + bw / 2;
  const cy = by + bh / 2;
  const r = Math.min(bw, bh) / 2 - 4;
  const innerR = donut ? r * 0.55 : 0;
  let angle = -Math.PI / 2;
  s.points.forEach(([category, v], i) => {
    const sweep = (Math.max(v, 0) / total) * 2 * Math.PI;
    const hi = isPointHighlighted(chart, s.name, category) || isSeriesHighlighted(chart, s.name);
    ops.push({
      op: "sector",
      role: "mark",
      cx,
      cy,
      r,
      innerR,
      a0: angle,
      a1: angle + sweep,
      fill: hi ? HIGHLIGHT : color(i),
      stroke: "#ffffff",
      lineWidth: 1,
    });
    angle += sweep;
  });
}

function radarOps(p: PlacementRec, body: RectArr, ops: DrawOp[]): void {
  const chart = p.chart;
  const first = chart.series[0];
  if (!first) return;
  const categories = first.points.map(([c]) => c);
  const n = categories.length;
  if (n < 3) return;
  const [bx, by, bw, bh] = body;
  const cx = bx + bw / 2;
  const cy = by + bh / 2;
  const r = Math.min(bw, bh) / 2 - 6;
  const maxV = Math.max(
    1e-9,
    ...chart.series.flatMap((s) => s.points.map(([, v]) => Math.abs(v))),
  );
  const spoke = (i: number, radius: number): [number, number] => {
    const a = -Math.PI / 2 + (i / n) * 2 * Math.PI;
    return [cx + radius * Math.cos(a), cy + radius * Math.sin(a)];
  };
  ops.push({
    op: "poly",
    role: "radar-grid",
    points: categories.map((_, i) => spoke(i, r)),
    stroke: "#c0c6cc",
    lineWidth: 1,
    close: true,
  });
  for (let i = 0; i < n; i++) {
    ops.push({
      op: "poly",
      role: "radar-grid",
      points: [[cx, cy], spoke(i, r)],
      stroke: "#c0c6cc",
      lineWidth: 1,
    });
  }
  chart.series.forEach((s, si) => {
    const hi = isSeriesHighlighted(chart, s.name);
    const pts = s.points.map(
      ([, v], i) => spoke(i, (Math.max(v, 0) / maxV) * r),
    );
    ops.push({
      op: "poly",
      role: "series-shape",
      points: pts,
      stroke: hi ? HIGHLIGHT : color(si),
      lineWidth: hi ? 3 : 1.5,
      close: true,
    });
  });
}

// ---------------------------------------------------------------------------
// plan assembly
// ---------------------------------------------------------------------------

function placementOps(p: PlacementRec, ops: DrawOp[]): void {
  const [x, y, w, h] = p.rect;
  // the exact rect the engine placed — drawn as given, never adjusted
  ops.push({
    op: "rect",
    role: "placement-frame",
    x,
    y,
    w,
    h,
    fill: CARD_BG,
    stroke: "#8a919a",
    lineWidth: 1,
  });
  ops.push({
    op: "text",
    role: "title",
    x: x + w / 2,
    y: y + 15,
    text: p.chart.title,
    fill: INK,
    font: TITLE_FONT,
    align: "center",
  });
  const body: RectArr = [x + 4, y + TITLE_H, w - 8, h - TITLE_H - 4];
  switch (p.chart.chartType) {
    case "bar":
      barOps(p, ops);
      break;
    case "line":
      lineOps(p, ops);
      break;
    case "pie":
      sectorOps(p, body, false, ops);
      break;
    case "donut":
      sectorOps(p, body, true, ops);
      break;
    case "radar":
      radarOps(p, body, ops);
      break;
  }
}

function annotationOps(a: AnnotationRec, ops: DrawOp[]): void {
  const [x, y, w, h] = a.rect;
  ops.push({
    op: "rect",
    role: "annotation-card",
    x,
    y,
    w,
    h,
    fill: "#fff8dc",
    stroke: "#b0a060",
    lineWidth: 1,
  });
  const label = a.text ?? a.imageRef ?? "";
  if (label) {
    ops.push({
      op: "text",
      role: "annotation-text",
      x: x + 6,
      y: y + 16,
      text: label,
      fill: INK,
      font: FONT,
      align: "left",
    });
  }
}

function panelOps(rec: RenderRec, frameSize: [number, number], ops: DrawOp[]): void {
  const panel = rec.panel;
  const w = 240;
  const x = frameSize[0] - w;
  ops.push({
    op: "rect",
    role: "panel",
    x,
    y: 0,
    w,
    h: frameSize[1],
    fill: "rgba(27,31,36,0.88)",
  });
  const line = (text: string, i: number, bold = false): void => {
    ops.push({
      op: "text",
      role: "panel-text",
      x: x + 10,
      y: 22 + i * 18,
      text,
      fill: "#f5f7f9",
      font: bold ? TITLE_FONT : FONT,
      align: "left",
    });
  };
  let i = 0;
  line(`scene ${panel.sceneIndex + 1}/${panel.sceneCount}: ${panel.sceneName}`, i++, true);
  i++;
  line("bindings", i++, true);
  for (const [key, title] of panel.objectToChart) {
    line(`${key} → ${title}`, i++);
  }
  i++;
  line("commands", i++, true);
  for (const cmd of panel.activeCommands) {
    line(cmd, i++);
  }
  if (panel.registeredSwaps.length > 0) {
    i++;
    line("condition swaps", i++, true);
    for (const [prompt, title] of panel.registeredSwaps) {
      line(`"${prompt}" → ${title}`, i++);
    }
  }
  i++;
  const d = rec.diagnostics;
  line(
    `tracks ${d.trackCount}  events ${d.events}  ${d.paused ? "PAUSED" : "live"}`,
    i++,
  );
}

export function buildPlan(rec: RenderRec | null, opts: PlanOptions): DrawOp[] {
  const ops: DrawOp[] = [];
  if (opts.halted) {
    ops.push({
      op: "banner",
      role: "banner",
      text: opts.haltMessage ?? "schema version mismatch — rendering halted",
    });
    return ops;
  }
  if (!rec) return ops;
  for (const p of rec.placements) {
    placementOps(p, ops);
  }
  for (const a of rec.annotations) {
    annotationOps(a, ops);
  }
  if (opts.presenterView) {
    panelOps(rec, opts.frameSize, ops);
  }
  return ops;
}
