/**
 * Pure schema translation: TabletopState -> one frame record per tick.
 *
 * This is the entire "synthesis" the client performs.  Timestamps are
 * frameIndex / fps, so a session recorded from the UI replays through the
 * CLI deterministically — there is no wall clock anywhere in the records.
 */
import {
  TOKEN_H,
  TOKEN_W,
  tokenPosition,
  type TabletopState,
  type Token,
} from "./state.js";
import type {
  DetectionRec,
  FrameRec,
  HandRec,
  StreamHeader,
} from "./types.js";
import { SCHEMA_VERSION } from "./types.js";

export function streamHeader(state: TabletopState, description = ""): StreamHeader {
  return {
    type: "header",
    kind: "track-stream",
    schemaVersion: SCHEMA_VERSION,
    frameSize: [state.frameSize[0], state.frameSize[1]],
    fps: state.fps,
    description,
  };
}

function detection(state: TabletopState, t: Token): DetectionRec {
  return {
    classLabel: t.classLabel,
    bbox: [t.x - TOKEN_W / 2, t.y - TOKEN_H / 2, TOKEN_W, TOKEN_H],
    position: tokenPosition(state, t),
    confidence: 1,
  };
}

/**
 * Sample the tabletop into the next frame record and advance frameIndex.
 * Detections are emitted in token-creation order, which keeps instance
 * ordinals stable for the engine's bindings.
 */
export function sampleFrame(state: TabletopState): FrameRec {
  const fi = state.frameIndex++;
  const hands: HandRec[] = state.hand.active
    ? [{ side: state.hand.side, indexTip: [state.hand.x, state.hand.y] }]
    : [];
  const rec: FrameRec = {
    type: "frame",
    frameIndex: fi,
    timestamp: fi / state.fps,
    detections: state.tokens.map((t) => detection(state, t)),
    hands,
  };
  if (state.faceVisible) {
    rec.faceBox = [...state.faceBox];
  }
  return rec;
}
