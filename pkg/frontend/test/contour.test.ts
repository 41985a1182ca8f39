import { describe, expect, it } from "vitest";
import { marchingSquares } from "../src/contour.js";

describe("marchingSquares", () => {
  it("interpolates a single crossing exactly", () => {
    // One cell, only the (1,1) corner above the level. The contour
    // cuts the right edge at y = 0.5 and the bottom edge at x = 0.5.
    const segs = marchingSquares([0, 1], [0, 1], [[0, 0], [0, 1]], 0.5);
    expect(segs).toEqual([[[1, 0.5], [0.5, 1]]]);
  });
  it("places the crossing by linear interpolation", () => {
    // a=0, b=4 along the top edge: level 1 crosses at x = 0.25.
    const segs = marchingSquares([0, 1], [0, 1], [[0, 4], [0, 0]], 1);
    expect(segs.length).toBe(1);
    const [[xa, ya], [xb, yb]] = segs[0];
    // left edge at y where 0 -> 0 never crosses; crossing edges are
    // top (x = 0.25) and right (y = 0.75 between 4 and 0).
    expect([xa, ya]).toEqual([0.25, 0]);
    expect([xb, yb]).toEqual([1, 0.75]);
  });
  it("treats grid points exactly at the level as inside", () => {
    const segs = marchingSquares([0, 1], [0, 1], [[1, 0], [0, 0]], 1);
    // Corner (0,0) sits exactly on the level: still one crossing pair.
    expect(segs.length).toBe(1);
  });
  it("returns nothing for a uniform field", () => {
    expect(marchingSquares([0, 1], [0, 1], [[2, 2], [2, 2]], 1)).toEqual([]);
    expect(marchingSquares([0, 1], [0, 1], [[0, 0], [0, 0]], 1)).toEqual([]);
  });
  it("resolves saddle cells by the center average", () => {
    // Opposite corners high: center mean 0.5 below level 0.6 separates
    // the two high corners into two disjoint contour arcs.
    const segs = marchingSquares([0, 1], [0, 1], [[1, 0], [0, 1]], 0.6);
    expect(segs.length).toBe(2);
  });
  it("validates grid shape", () => {
    expect(() => marchingSquares([0, 1], [0, 1], [[0, 0]], 0.5)).toThrow(/rows/);
    expect(() => marchingSquares([0, 1], [0, 1], [[0], [0, 1]], 0.5)).toThrow(/columns/);
  });
  it("is deterministic across repeated calls", () => {
    const grid = [
      [0.9, 0.7, 0.3],
      [0.8, 0.5, 0.2],
      [0.4, 0.3, 0.1],
    ];
    const a = marchingSquares([0, 1, 2], [0, 1, 2], grid, 0.55);
    const b = marchingSquares([0, 1, 2], [0, 1, 2], grid, 0.55);
    expect(a).toEqual(b);
    expect(a.length).toBeGreaterThan(0);
  });
});
