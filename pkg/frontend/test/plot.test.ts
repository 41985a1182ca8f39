import { describe, expect, it } from "vitest";
import { clippedRuns, fmtTick, makeAxes, ticks } from "../src/plot.js";
import { fmt, fmtValue } from "../src/svg.js";

describe("makeAxes", () => {
  it("maps data to screen coordinates linearly, y inverted", () => {
    const axes = makeAxes(10, 20, 100, 50, [0, 2], [0, 1]);
    expect(axes.sx(0)).toBe(10);
    expect(axes.sx(2)).toBe(110);
    expect(axes.sx(1)).toBe(60);
    expect(axes.sy(0)).toBe(70);
    expect(axes.sy(1)).toBe(20);
    expect(axes.sy(0.25)).toBe(57.5);
  });
  it("rejects degenerate domains", () => {
    expect(() => makeAxes(0, 0, 10, 10, [1, 1], [0, 1])).toThrow(/degenerate/);
    expect(() => makeAxes(0, 0, 10, 10, [0, 1], [2, 1])).toThrow(/degenerate/);
  });
});

describe("ticks", () => {
  it("uses 1/2/5 steps covering the range", () => {
    expect(ticks(0, 2)).toEqual([0, 0.5, 1, 1.5, 2]);
    expect(ticks(0, 1)).toEqual([0, 0.2, 0.4, 0.6, 0.8, 1]);
    expect(ticks(0, 0.6)).toEqual([0, 0.2, 0.4, 0.6]);
  });
  it("handles offset ranges", () => {
    expect(ticks(0.45, 1.05)).toEqual([0.6, 0.8, 1]);
    expect(ticks(0.45, 1.05, 8)).toEqual([0.5, 0.6, 0.7, 0.8, 0.9, 1]);
  });
});

describe("formatters", () => {
  it("fmt renders screen coordinates with two decimals", () => {
    expect(fmt(10)).toBe("10.00");
    expect(fmt(3.14159)).toBe("3.14");
    expect(fmt(-0.0001)).toBe("0.00");
    expect(() => fmt(NaN)).toThrow(/non-finite/);
  });
  it("fmtTick strips float noise", () => {
    expect(fmtTick(0.30000000000000004)).toBe("0.3");
    expect(fmtTick(0)).toBe("0");
    expect(fmtTick(-0)).toBe("0");
  });
  it("fmtValue keeps short data labels", () => {
    expect(fmtValue(0.24)).toBe("0.24");
    expect(fmtValue(Infinity)).toBe("inf");
    expect(fmtValue(NaN)).toBe("nan");
    expect(fmtValue(0.9074197321)).toBe("0.90742");
  });
});

describe("clippedRuns", () => {
  const axes = makeAxes(0, 0, 100, 100, [0, 10], [0, 1]);
  it("splits a polyline where it leaves the y domain", () => {
    const runs = clippedRuns(
      [
        [0, 0.5],
        [1, 0.6],
        [2, 1.4],
        [3, 0.7],
        [4, 0.8],
      ],
      axes,
    );
    expect(runs.length).toBe(2);
    expect(runs[0].length).toBe(2);
    expect(runs[1].length).toBe(2);
  });
  it("drops non-finite points", () => {
    const runs = clippedRuns(
      [
        [0, NaN],
        [1, 0.5],
      ],
      axes,
    );
    expect(runs).toEqual([[[10, 50]]]);
  });
});
