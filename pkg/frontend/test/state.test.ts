import { describe, expect, it } from "vitest";
import {
  DEPTH_DEFAULT,
  DEPTH_MAX,
  DEPTH_MIN,
  LIFT_HEIGHT,
  PX_PER_METER,
  addToken,
  initialState,
  moveToken,
  physicalDistance,
  removeToken,
  setDepth,
  setLifted,
  tokenPosition,
} from "../src/state.js";

describe("tabletop state", () => {
  it("assigns stable incrementing token ids", () => {
    const s = initialState();
    const a = addToken(s, "bottle", 300, 400);
    const b = addToken(s, "bottle", 600, 400);
    expect([a.id, b.id]).toEqual([1, 2]);
    removeToken(s, a.id);
    expect(addToken(s, "car", 100, 100).id).toBe(3);
  });

  it("clamps dragging to the frame", () => {
    const s = initialState([1280, 720]);
    const t = addToken(s, "bottle", 300, 400);
    moveToken(s, t.id, -500, 10_000);
    expect(t.x).toBe(32);
    expect(t.y).toBe(720 - 48);
  });

  it("clamps the depth slider to its physical range", () => {
    const s = initialState();
    const t = addToken(s, "bottle", 300, 400);
    setDepth(s, t.id, 0.01);
    expect(t.depth).toBe(DEPTH_MIN);
    setDepth(s, t.id, 9);
    expect(t.depth).toBe(DEPTH_MAX);
  });

  it("maps screen x, depth, and lift onto the camera-space axes", () => {
    const s = initialState([1280, 720]);
    const t = addToken(s, "bottle", 640, 480); // screen center
    expect(tokenPosition(s, t)).toEqual([0, 0, DEPTH_DEFAULT]);
    moveToken(s, t.id, 640 + PX_PER_METER / 4, 480);
    setLifted(s, t.id, true);
    setDepth(s, t.id, 1.0);
    expect(tokenPosition(s, t)).toEqual([0.25, LIFT_HEIGHT, 1.0]);
  });

  it("tokens dragged side by side sit inside the default join distance", () => {
    const s = initialState();
    const a = addToken(s, "bottle", 600, 480);
    const b = addToken(s, "bottle", 664, 480); // adjacent: one token width apart
    expect(physicalDistance(s, a, b)).toBeCloseTo(0.04, 10);
    expect(physicalDistance(s, a, b)).toBeLessThan(0.12);
    moveToken(s, b.id, 600 + 480, 480); // 480 px = 0.30 m: beyond split
    expect(physicalDistance(s, a, b)).toBeGreaterThan(0.18);
  });
});
