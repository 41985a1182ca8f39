import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { marchingSquares } from "../src/contour.js";
import { discoverFigure } from "../src/figspec.js";
import { loadSurface, renderContour } from "../src/fig/contour.js";
import { makeAxes } from "../src/plot.js";
import { DEFAULT_STYLE } from "../src/style.js";
import { fmt } from "../src/svg.js";
import { FIXTURES } from "./util.js";

const SURFACE = join(FIXTURES, "surface", "twodw", "surface.csv");

function metaLine(path: string, key: string): string {
  const raw = readFileSync(path, "utf8");
  const line = raw.split("\n").find((l) => l.startsWith(`# ${key}=`));
  if (!line) throw new Error(`${path}: no meta ${key}`);
  return line.slice(key.length + 3);
}

describe("loadSurface", () => {
  const data = loadSurface("2DW", SURFACE);

  it("uses the recorded contour level exactly", () => {
    const verbatim = metaLine(SURFACE, "level");
    expect(data.levelText).toBe(verbatim);
    expect(Object.is(data.level, Number(verbatim))).toBe(true);
  });

  it("rebuilds the full (t1, t2) grid from long-format rows", () => {
    expect(data.t1.length).toBe(49);
    expect(data.t2.length).toBe(25);
    expect(data.p.length).toBe(25);
    expect(data.p[0].length).toBe(49);
    expect(data.period).toBe(0.6);
    expect(data.tHalf).toBe(0.3);
  });

  it("finds the recorded level at the reversal point (T/2, T/2)", () => {
    // The CSV cells round to 12 significant digits while the header
    // level is written in full precision, so agreement is to rounding.
    const j = data.t1.findIndex((t) => t === 0.3);
    const k = data.t2.findIndex((t) => t === 0.3);
    expect(j).toBeGreaterThanOrEqual(0);
    expect(k).toBeGreaterThanOrEqual(0);
    expect(Math.abs(data.p[k][j] - data.level) / data.level).toBeLessThan(1e-9);
  });

  it("passes the contour through the reversal point", () => {
    const segments = marchingSquares(data.t1, data.t2, data.p, data.level);
    expect(segments.length).toBeGreaterThan(0);
    let best = Infinity;
    for (const seg of segments) {
      for (const [x, y] of seg) {
        best = Math.min(best, Math.hypot(x - data.tHalf, y - data.tHalf));
      }
    }
    // Within a couple of grid cells (step 0.0125) of (T/2, T/2).
    expect(best).toBeLessThan(0.03);
  });
});

describe("renderContour", () => {
  const svg = renderContour(discoverFigure("contour", join(FIXTURES, "surface")), DEFAULT_STYLE);

  it("prints the verbatim level of each panel", () => {
    const left = metaLine(SURFACE, "level");
    const right = metaLine(join(FIXTURES, "surface", "ermt", "surface.csv"), "level");
    expect(svg).toContain(`P = ${left}`);
    expect(svg).toContain(`P = ${right}`);
    expect(left).not.toBe(right);
  });

  it("marks the experiment path endpoints at (T/2, 0) and (T/2, T/2)", () => {
    const p = DEFAULT_STYLE.panel;
    const axes = makeAxes(p.marginLeft, p.marginTop, p.width, p.height, [0, 0.6], [0, 0.3]);
    const px = fmt(axes.sx(0.3));
    expect(svg).toContain(`<circle cx="${px}" cy="${fmt(axes.sy(0))}"`);
    expect(svg).toContain(`<circle cx="${px}" cy="${fmt(axes.sy(0.3))}"`);
    // The reversed leg is dashed.
    expect(svg).toContain(`stroke-dasharray="${DEFAULT_STYLE.pathDash}"`);
  });

  it("marks the equal-times Loschmidt-echo axis", () => {
    expect(svg).toContain(">LE<");
    expect(svg).toContain(`stroke-dasharray="${DEFAULT_STYLE.leAxisDash}"`);
  });

  it("renders the small-lambda vs large-lambda contrast", () => {
    const spec = discoverFigure("contour", join(FIXTURES, "surface_lambda"));
    const contrast = renderContour(spec, DEFAULT_STYLE);
    const small = metaLine(join(FIXTURES, "surface_lambda", "small", "surface.csv"), "level");
    const large = metaLine(join(FIXTURES, "surface_lambda", "large", "surface.csv"), "level");
    expect(contrast).toContain(`P = ${small}`);
    expect(contrast).toContain(`P = ${large}`);
    // Weak perturbation keeps the echo near one; strong drops it well
    // below, which is what flips the crossing from sharp to steep.
    expect(Number(small)).toBeGreaterThan(0.95);
    expect(Number(large)).toBeLessThan(0.8);
  });
});
