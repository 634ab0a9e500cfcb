/**
 * Wire record types for the session service protocol.
 *
 * These mirror docs/formats.md and docs/schema.md exactly; the client's only
 * job is translating UI state into these records and drawing what comes
 * back.  Geometry travels as plain arrays: Rect [x, y, w, h] in screen
 * pixels (top-left origin), Vec3 [x, y, z] in meters (camera at origin).
 */

export type RectArr = [number, number, number, number];
export type Vec3Arr = [number, number, number];
export type HandSide = "left" | "right";

export const SCHEMA_VERSION = 1;

export interface StreamHeader {
  type: "header";
  kind: "track-stream";
  schemaVersion: number;
  frameSize: [number, number];
  fps: number;
  description: string;
}

export interface DetectionRec {
  classLabel: string;
  bbox: RectArr;
  position: Vec3Arr;
  confidence: number;
}

export interface HandRec {
  side: HandSide;
  indexTip: [number, number];
}

export interface FrameRec {
  type: "frame";
  frameIndex: number;
  timestamp: number;
  detections: DetectionRec[];
  hands: HandRec[];
  faceBox?: RectArr;
}

export type ControlCmd =
  | "SceneNext"
  | "ScenePrev"
  | "SetPointingHand"
  | "Pause"
  | "Resume";

export interface ControlRec {
  type: "control";
  cmd: ControlCmd;
  hand?: HandSide;
}

export interface OracleRec {
  type: "oracle";
  conditionId: string;
  answer: 0 | 1;
}

export type OutboundRec = StreamHeader | FrameRec | ControlRec | OracleRec;

// ---------------------------------------------------------------------------
// inbound
// ---------------------------------------------------------------------------

export interface LogHeader {
  type: "header";
  kind: "event-log" | "render-log";
  schemaVersion: number;
}

export interface EventRec {
  type: "event";
  kind: string;
  frameIndex: number;
  timestamp: number;
  objectId?: number;
  otherId?: number;
  orientation?: string;
  visId?: number;
  seriesName?: string;
  category?: string;
  band?: string;
  conditionId?: string;
}

export interface EffectRec {
  type: "effect";
  effect: string;
  frameIndex: number;
  timestamp: number;
  visId?: number;
  objectId?: number;
  otherId?: number;
  seriesName?: string;
  category?: string;
  chartTitle?: string;
  composition?: string;
  conditionId?: string;
}

export interface SeriesRec {
  name: string;
  points: [string, number][];
}

export interface ChartRec {
  chartType: "bar" | "line" | "pie" | "donut" | "radar";
  title: string;
  sourceTag: string;
  series: SeriesRec[];
  highlightSeries: string[];
  highlightPoints: [string, string][];
  composition?: "clustered" | "stacked" | "overlay";
}

export interface PlacementRec {
  visId: number;
  objectIds: number[];
  rect: RectArr;
  scale: number;
  chart: ChartRec;
  markRects: [string, string, RectArr][];
}

export interface AnnotationRec {
  objectId: number;
  rect: RectArr;
  imageRef?: string;
  text?: string;
}

export interface PanelRec {
  sceneName: string;
  sceneIndex: number;
  sceneCount: number;
  objectToChart: [string, string][];
  activeCommands: string[];
  registeredSwaps: [string, string][];
}

export interface DiagnosticsRec {
  trackCount: number;
  births: number;
  deaths: number;
  events: number;
  effects: number;
  droppedOracleTicks: number;
  paused: boolean;
}

export interface RenderRec {
  type: "render";
  frameIndex: number;
  timestamp: number;
  placements: PlacementRec[];
  annotations: AnnotationRec[];
  panel: PanelRec;
  diagnostics: DiagnosticsRec;
}

export interface ErrorRec {
  type: "error";
  message: string;
}

export type InboundRec =
  | LogHeader
  | EventRec
  | EffectRec
  | ControlRec
  | OracleRec
  | RenderRec
  | ErrorRec;
