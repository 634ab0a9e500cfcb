/**
 * Tabletop state: the draggable world the presenter manipulates.
 *
 * Everything here is plain data mutated by small reducer functions so tests
 * can drive sessions without a DOM.  The state knows nothing about events,
 * layout, or scenes — the engine decides all of that; this file only
 * remembers where the tokens are.
 */
import type { HandSide, RectArr, RenderRec } from "./types.js";

export interface Token {
  id: number;
  classLabel: string;
  /** Screen-space center of the token, pixels. */
  x: number;
  y: number;
  /** Depth slider: camera distance in meters. */
  depth: number;
  /** Lift toggle: raises the token LIFT_HEIGHT meters above the table. */
  lifted: boolean;
}

export interface HandMarker {
  side: HandSide;
  x: number;
  y: number;
  active: boolean;
}

export interface TabletopState {
  frameSize: [number, number];
  fps: number;
  tokens: Token[];
  hand: HandMarker;
  faceBox: RectArr;
  faceVisible: boolean;
  /** Next outbound frame index; strictly monotone. */
  frameIndex: number;
  connected: boolean;
  lastRender: RenderRec | null;
  lastError: string | null;
  presenterView: boolean;
  nextTokenId: number;
}

/** Token footprint on screen, pixels. */
export const TOKEN_W = 64;
export const TOKEN_H = 96;

/**
 * Screen-to-physical mapping. The view faces the table front-on:
 * screen x maps to physical x (1600 px per meter, centered), the depth
 * slider is physical z directly, and the lift toggle sets physical y.
 * Two tokens dragged side by side (64 px apart) are 0.04 m apart — inside
 * the engine's default 0.12 m join distance; 192 px is the join boundary.
 */
export const PX_PER_METER = 1600;
export const LIFT_HEIGHT = 0.1;
export const DEPTH_MIN = 0.3;
export const DEPTH_MAX = 1.3;
export const DEPTH_DEFAULT = 0.8;

export function initialState(
  frameSize: [number, number] = [1280, 720],
  fps = 30,
): TabletopState {
  return {
    frameSize,
    fps,
    tokens: [],
    hand: { side: "right", x: frameSize[0] / 2, y: frameSize[1] - 80, active: false },
    faceBox: [frameSize[0] / 2 - 100, 30, 200, 200],
    faceVisible: true,
    frameIndex: 0,
    connected: false,
    lastRender: null,
    lastError: null,
    presenterView: true,
    nextTokenId: 1,
  };
}

export function addToken(
  state: TabletopState,
  classLabel: string,
  x: number,
  y: number,
): Token {
  const token: Token = {
    id: state.nextTokenId++,
    classLabel,
    x,
    y,
    depth: DEPTH_DEFAULT,
    lifted: false,
  };
  state.tokens.push(token);
  return token;
}

export function removeToken(state: TabletopState, id: number): void {
  state.tokens = state.tokens.filter((t) => t.id !== id);
}

export function moveToken(state: TabletopState, id: number, x: number, y: number): void {
  const t = state.tokens.find((t) => t.id === id);
  if (!t) return;
  const [w, h] = state.frameSize;
  t.x = Math.min(Math.max(x, TOKEN_W / 2), w - TOKEN_W / 2);
  t.y = Math.min(Math.max(y, TOKEN_H / 2), h - TOKEN_H / 2);
}

export function setDepth(state: TabletopState, id: number, depth: number): void {
  const t = state.tokens.find((t) => t.id === id);
  if (!t) return;
  t.depth = Math.min(Math.max(depth, DEPTH_MIN), DEPTH_MAX);
}

export function setLifted(state: TabletopState, id: number, lifted: boolean): void {
  const t = state.tokens.find((t) => t.id === id);
  if (!t) return;
  t.lifted = lifted;
}

export function moveHand(state: TabletopState, x: number, y: number): void {
  state.hand.x = x;
  state.hand.y = y;
}

export function setHandActive(state: TabletopState, active: boolean): void {
  state.hand.active = active;
}

export function setHandSide(state: TabletopState, side: HandSide): void {
  state.hand.side = side;
}

export function moveFaceBox(state: TabletopState, x: number, y: number): void {
  state.faceBox = [x, y, state.faceBox[2], state.faceBox[3]];
}

/** Physical position of a token under the screen mapping. */
export function tokenPosition(state: TabletopState, t: Token): [number, number, number] {
  return [
    (t.x - state.frameSize[0] / 2) / PX_PER_METER,
    t.lifted ? LIFT_HEIGHT : 0.0,
    t.depth,
  ];
}

/** Physical distance between two tokens — what the engine's join sees. */
export function physicalDistance(state: TabletopState, a: Token, b: Token): number {
  const pa = tokenPosition(state, a);
  const pb = tokenPosition(state, b);
  return Math.hypot(pa[0] - pb[0], pa[1] - pb[1], pa[2] - pb[2]);
}
