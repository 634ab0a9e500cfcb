import { describe, expect, it } from "vitest";
import { canonical } from "../src/canonical.js";
import { sampleFrame, streamHeader } from "../src/emit.js";
import {
  TOKEN_H,
  TOKEN_W,
  addToken,
  initialState,
  setHandActive,
  setHandSide,
} from "../src/state.js";

describe("frame emission", () => {
  it("emits the track-stream header the service expects", () => {
    const s = initialState([1280, 720], 30);
    expect(streamHeader(s, "demo")).toEqual({
      type: "header",
      kind: "track-stream",
      schemaVersion: 1,
      frameSize: [1280, 720],
      fps: 30,
      description: "demo",
    });
  });

  it("keeps frameIndex strictly monotone and timestamps on the frame grid", () => {
    const s = initialState();
    const f0 = sampleFrame(s);
    const f1 = sampleFrame(s);
    const f2 = sampleFrame(s);
    expect([f0.frameIndex, f1.frameIndex, f2.frameIndex]).toEqual([0, 1, 2]);
    expect(f2.timestamp).toBe(2 / 30);
    expect(sampleFrame(s).timestamp).toBe(0.1); // 3/30 exactly
  });

  it("translates tokens into detections in creation order", () => {
    const s = initialState();
    addToken(s, "bottle", 400, 480);
    addToken(s, "bottle", 880, 480);
    const f = sampleFrame(s);
    expect(f.detections.map((d) => d.classLabel)).toEqual(["bottle", "bottle"]);
    const d = f.detections[0]!;
    expect(d.bbox).toEqual([400 - TOKEN_W / 2, 480 - TOKEN_H / 2, TOKEN_W, TOKEN_H]);
    expect(d.position).toEqual([(400 - 640) / 1600, 0, 0.8]);
    expect(d.confidence).toBe(1);
  });

  it("includes the hand only while active, and the face box only while tracked", () => {
    const s = initialState();
    expect(sampleFrame(s).hands).toEqual([]);
    setHandActive(s, true);
    setHandSide(s, "left");
    const f = sampleFrame(s);
    expect(f.hands).toEqual([{ side: "left", indexTip: [s.hand.x, s.hand.y] }]);
    expect(f.faceBox).toEqual(s.faceBox);
    s.faceVisible = false;
    expect("faceBox" in sampleFrame(s)).toBe(false);
  });

  it("serializes to parseable canonical lines", () => {
    const s = initialState();
    addToken(s, "bottle", 400, 480);
    const line = canonical(sampleFrame(s));
    expect(line.startsWith('{"detections":[{"bbox":[368,432,64,96],')).toBe(true);
    const parsed = JSON.parse(line);
    expect(parsed.type).toBe("frame");
    expect(Object.keys(parsed)).toEqual(
      [...Object.keys(parsed)].sort(),
    );
  });
});
